use std::path::Path;

use privres_core::fixtures::{
    human_quoted_points, machine_fixture_curves, super_resolution_activity, super_resolution_privacy,
    super_resolution_to_csv, table1, table1_weights, table2_curves,
};
use privres_core::model::io::{curves_to_csv, curves_to_json, weights_to_json};
use serde::Serialize;

use crate::error::CliError;
use crate::output::{write_config, Emitted};

#[derive(Serialize)]
struct Params {}

/// Writes every bundled table and curve set in the toolkit's own formats.
pub fn run(out: &Path) -> Result<Vec<String>, CliError> {
    let mut emitted = Emitted::default();
    emitted.write(out.join("importance.csv"), table1().to_csv().as_bytes())?;
    emitted.write(out.join("weights.json"), weights_to_json(&table1_weights()).as_bytes())?;
    emitted.write(out.join("adl_curves.csv"), curves_to_csv(&table2_curves()).as_bytes())?;
    let machine = machine_fixture_curves();
    emitted.write(out.join("machine_curves.csv"), curves_to_csv(&machine).as_bytes())?;
    emitted.write(out.join("machine_curves.json"), curves_to_json(&machine).as_bytes())?;
    emitted.write(out.join("human_points.csv"), curves_to_csv(&human_quoted_points()).as_bytes())?;
    emitted.write(
        out.join("super_resolution_activity.csv"),
        super_resolution_to_csv(&super_resolution_activity()).as_bytes(),
    )?;
    emitted.write(
        out.join("super_resolution_privacy.csv"),
        super_resolution_to_csv(&super_resolution_privacy()).as_bytes(),
    )?;
    emitted.files.push(write_config(out, "fixtures", &Params {})?);
    Ok(super::wrote(&emitted))
}
