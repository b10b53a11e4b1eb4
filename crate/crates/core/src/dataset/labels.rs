use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

macro_rules! label_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $token:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $token)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $token),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($token => Ok($name::$variant),)+
                    _ => Err(format!(
                        "unknown {} label `{s}` (expected one of {})",
                        stringify!($name),
                        [$($token),+].join(", ")
                    )),
                }
            }
        }
    };
}

label_enum!(
    /// Most revealing state of dress visible in a frame.
    Nudity {
        NakedOrSemiNaked => "naked_or_semi_naked",
        FullyClothed => "fully_clothed",
        NoPerson => "no_person",
    }
);

label_enum!(
    /// Whether an identifiable face is visible.
    Face {
        Yes => "yes",
        No => "no",
        NoPerson => "no_person",
    }
);

label_enum!(
    /// Whether valuable property is visible.
    Property {
        Yes => "yes",
        No => "no",
        NoPerson => "no_person",
    }
);

label_enum!(
    /// Relationship between the people in view.
    Relationship {
        Intimate => "intimate",
        NonIntimate => "non_intimate",
        OnlyOnePerson => "only_one_person",
        NoPerson => "no_person",
    }
);

label_enum!(
    /// Activity-of-daily-living class.
    Activity {
        FunctionalMobility => "functional_mobility",
        Feeding => "feeding",
        Intimacy => "intimacy",
        Entertainment => "entertainment",
        PersonalHygiene => "personal_hygiene",
    }
);

label_enum!(
    /// A recognition task: the activity task or one privacy feature.
    Task {
        Activity => "activity",
        Nudity => "nudity",
        Face => "face",
        Property => "property",
        Relationship => "relationship",
    }
);

impl Task {
    /// Parses `token` against this task's label alphabet.
    pub fn parse_label(self, token: &str) -> Result<Label, String> {
        Ok(match self {
            Task::Activity => Label::Activity(token.parse()?),
            Task::Nudity => Label::Nudity(token.parse()?),
            Task::Face => Label::Face(token.parse()?),
            Task::Property => Label::Property(token.parse()?),
            Task::Relationship => Label::Relationship(token.parse()?),
        })
    }

    /// Catalog id of the privacy feature this task recognizes.
    pub fn feature_id(self) -> Option<&'static str> {
        match self {
            Task::Activity => None,
            Task::Nudity => Some("nudity"),
            Task::Face => Some("identifiable_face"),
            Task::Property => Some("valuable_property"),
            Task::Relationship => Some("relationship"),
        }
    }
}

/// A label from any task alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Activity(Activity),
    Nudity(Nudity),
    Face(Face),
    Property(Property),
    Relationship(Relationship),
}

impl Label {
    pub fn task(self) -> Task {
        match self {
            Label::Activity(_) => Task::Activity,
            Label::Nudity(_) => Task::Nudity,
            Label::Face(_) => Task::Face,
            Label::Property(_) => Task::Property,
            Label::Relationship(_) => Task::Relationship,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Activity(l) => l.as_str(),
            Label::Nudity(l) => l.as_str(),
            Label::Face(l) => l.as_str(),
            Label::Property(l) => l.as_str(),
            Label::Relationship(l) => l.as_str(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One label per task, for a single frame or a whole clip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrameLabelSet {
    pub nudity: Nudity,
    pub face: Face,
    pub property: Property,
    pub relationship: Relationship,
    pub activity: Activity,
}

impl FrameLabelSet {
    pub fn get(&self, task: Task) -> Label {
        match task {
            Task::Activity => Label::Activity(self.activity),
            Task::Nudity => Label::Nudity(self.nudity),
            Task::Face => Label::Face(self.face),
            Task::Property => Label::Property(self.property),
            Task::Relationship => Label::Relationship(self.relationship),
        }
    }

    /// Builds a set from one label per task; `None` if any task is missing
    /// or a label belongs to the wrong task.
    pub fn from_labels(labels: &[Label]) -> Option<Self> {
        let pick = |task: Task| labels.iter().copied().find(|l| l.task() == task);
        Some(Self {
            nudity: match pick(Task::Nudity)? {
                Label::Nudity(l) => l,
                _ => return None,
            },
            face: match pick(Task::Face)? {
                Label::Face(l) => l,
                _ => return None,
            },
            property: match pick(Task::Property)? {
                Label::Property(l) => l,
                _ => return None,
            },
            relationship: match pick(Task::Relationship)? {
                Label::Relationship(l) => l,
                _ => return None,
            },
            activity: match pick(Task::Activity)? {
                Label::Activity(l) => l,
                _ => return None,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_round_trip() {
        for &t in Task::ALL {
            assert_eq!(t.as_str().parse::<Task>().unwrap(), t);
        }
        for &l in Relationship::ALL {
            let parsed = Task::Relationship.parse_label(l.as_str()).unwrap();
            assert_eq!(parsed, Label::Relationship(l));
        }
        assert!(Task::Face.parse_label("intimate").is_err());
        assert_eq!(
            serde_json::to_string(&Nudity::NakedOrSemiNaked).unwrap(),
            "\"naked_or_semi_naked\""
        );
    }

    #[test]
    fn label_set_access() {
        let s = FrameLabelSet {
            nudity: Nudity::FullyClothed,
            face: Face::Yes,
            property: Property::No,
            relationship: Relationship::OnlyOnePerson,
            activity: Activity::Feeding,
        };
        let labels: Vec<Label> = Task::ALL.iter().map(|&t| s.get(t)).collect();
        assert_eq!(FrameLabelSet::from_labels(&labels), Some(s));
        assert_eq!(FrameLabelSet::from_labels(&labels[1..]), None);
    }
}
