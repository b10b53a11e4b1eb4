use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The five closed categories the surveyed privacy features fall into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    BiometricIdentification,
    PersonalMarker,
    Ethnicity,
    Society,
    Safety,
}

impl Category {
    pub const ALL: [Category; 5] = [
        Category::BiometricIdentification,
        Category::PersonalMarker,
        Category::Ethnicity,
        Category::Society,
        Category::Safety,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::BiometricIdentification => "biometric_identification",
            Category::PersonalMarker => "personal_marker",
            Category::Ethnicity => "ethnicity",
            Category::Society => "society",
            Category::Safety => "safety",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown category `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrivacyFeature {
    pub id: String,
    pub display_name: String,
    pub category: Category,
}

/// An ordered set of privacy features with unique ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureCatalog {
    features: Vec<PrivacyFeature>,
}

impl FeatureCatalog {
    /// Builds a catalog, rejecting duplicate ids.
    pub fn new(features: Vec<PrivacyFeature>) -> Result<Self, String> {
        let mut seen = std::collections::BTreeSet::new();
        for f in &features {
            if !seen.insert(f.id.as_str()) {
                return Err(format!("duplicate feature id `{}`", f.id));
            }
        }
        Ok(Self { features })
    }

    /// The 25 home-environment privacy features in survey table order.
    pub fn standard() -> Self {
        use Category::*;
        const ROWS: [(&str, &str, Category); 25] = [
            ("identifiable_face", "Identifiable Face", BiometricIdentification),
            ("gender", "Gender", BiometricIdentification),
            ("skin_color", "Skin Color", BiometricIdentification),
            ("age_group", "Age Group", BiometricIdentification),
            ("weight_group", "Weight Group", BiometricIdentification),
            ("hair_color", "Hair Color", BiometricIdentification),
            ("eye_color", "Eye Color", BiometricIdentification),
            ("height_group", "Height Group", BiometricIdentification),
            ("nudity", "Nudity", PersonalMarker),
            ("home_address", "Home Address", PersonalMarker),
            ("number_code", "Number/code", PersonalMarker),
            ("medical_treatment", "Medical Treatment", PersonalMarker),
            ("physical_disability", "Physical Disability", PersonalMarker),
            ("hand_writing", "Hand Writing", PersonalMarker),
            ("birthday", "Birthday", PersonalMarker),
            ("clothing", "Clothing", PersonalMarker),
            ("tattoo", "Tattoo", PersonalMarker),
            ("religion", "Religion", Ethnicity),
            ("race", "Race", Ethnicity),
            ("nationality", "Nationality", Ethnicity),
            ("relationship", "Relationship", Society),
            ("employment", "Employment", Society),
            ("pet", "Pet", Society),
            ("valuable_property", "Valuable Property", Safety),
            ("living_schedule", "Living Schedule", Safety),
        ];
        let features = ROWS
            .iter()
            .map(|&(id, name, category)| PrivacyFeature {
                id: id.to_string(),
                display_name: name.to_string(),
                category,
            })
            .collect();
        Self { features }
    }

    pub fn features(&self) -> &[PrivacyFeature] {
        &self.features
    }

    pub fn get(&self, id: &str) -> Option<&PrivacyFeature> {
        self.features.iter().find(|f| f.id == id)
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.features.iter().map(|f| f.id.as_str())
    }
}
