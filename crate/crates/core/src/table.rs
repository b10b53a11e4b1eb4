//! Flat CSV tables with a fixed header and line-numbered diagnostics.

use std::fmt;
use std::str::FromStr;

use csv::StringRecord;

/// A schema violation with the 1-based input line and offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub line: u64,
    pub field: String,
    pub message: String,
}

impl SchemaError {
    pub fn new(line: u64, field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            line,
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, field `{}`: {}", self.line, self.field, self.message)
    }
}

impl std::error::Error for SchemaError {}

pub(crate) struct Row<'h> {
    pub line: u64,
    header: &'h [&'h str],
    record: StringRecord,
}

impl Row<'_> {
    pub fn get(&self, field: &str) -> &str {
        let idx = self
            .header
            .iter()
            .position(|h| *h == field)
            .expect("field is part of the header");
        self.record.get(idx).unwrap_or("")
    }

    pub fn parse<T>(&self, field: &str) -> Result<T, SchemaError>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        let raw = self.get(field);
        raw.parse::<T>()
            .map_err(|e| SchemaError::new(self.line, field, format!("cannot parse `{raw}`: {e}")))
    }

    pub fn error(&self, field: &str, message: impl Into<String>) -> SchemaError {
        SchemaError::new(self.line, field, message)
    }
}

/// Reads `text` as CSV whose first line must equal `header` exactly.
pub(crate) fn read<'h>(text: &str, header: &'h [&'h str]) -> Result<Vec<Row<'h>>, SchemaError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let found = reader
        .headers()
        .map_err(|e| SchemaError::new(1, "header", e.to_string()))?
        .clone();
    let found: Vec<&str> = found.iter().collect();
    if found != header {
        return Err(SchemaError::new(
            1,
            "header",
            format!("expected `{}`, found `{}`", header.join(","), found.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            SchemaError::new(line, "record", e.to_string())
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        rows.push(Row {
            line,
            header,
            record,
        });
    }
    Ok(rows)
}

/// Renders a header and rows as CSV text with `\n` line endings.
pub(crate) fn write<I, R>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for row in rows {
        w.write_record(row).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: &[&str] = &["a", "b"];

    #[test]
    fn header_mismatch_reported_on_line_one() {
        let err = read("x,y\n1,2\n", H).err().unwrap();
        assert_eq!(err.line, 1);
        assert_eq!(err.field, "header");
    }

    #[test]
    fn parse_error_has_line_and_field() {
        let rows = read("a,b\n1,2\n3,oops\n", H).unwrap();
        assert_eq!(rows[1].line, 3);
        let err = rows[1].parse::<u32>("b").unwrap_err();
        assert_eq!((err.line, err.field.as_str()), (3, "b"));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = read("a,b\n1,2\n3\n", H).err().unwrap();
        assert_eq!(err.line, 3);
    }

    #[test]
    fn write_then_read() {
        let text = write(H, [["1", "x,y"], ["2", "z"]]);
        assert_eq!(text, "a,b\n1,\"x,y\"\n2,z\n");
        let rows = read(&text, H).unwrap();
        assert_eq!(rows[0].get("b"), "x,y");
    }
}
