use std::fmt;

use serde::Serialize;

/// An item is an individual when it is discernible from every other item and
/// re-identifiable over time. Failing either condition, or both, yields the
/// three kinds of non-individual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndividualityCategory {
    Individual,
    /// Indiscernible from others of its kind, but re-identifiable.
    NonIndividualI,
    /// Discernible, but without conditions of identification over time.
    NonIndividualII,
    /// Neither discernible nor re-identifiable.
    NonIndividualIII,
}

impl fmt::Display for IndividualityCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndividualityCategory::Individual => "individual",
            IndividualityCategory::NonIndividualI => "non-individual-i",
            IndividualityCategory::NonIndividualII => "non-individual-ii",
            IndividualityCategory::NonIndividualIII => "non-individual-iii",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndividualityVerdict {
    pub discernible: bool,
    pub reidentifiable: bool,
    pub category: IndividualityCategory,
}

pub fn classify_individuality(discernible: bool, reidentifiable: bool) -> IndividualityVerdict {
    let category = match (discernible, reidentifiable) {
        (true, true) => IndividualityCategory::Individual,
        (false, true) => IndividualityCategory::NonIndividualI,
        (true, false) => IndividualityCategory::NonIndividualII,
        (false, false) => IndividualityCategory::NonIndividualIII,
    };
    IndividualityVerdict {
        discernible,
        reidentifiable,
        category,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_way_table() {
        use IndividualityCategory::*;
        assert_eq!(classify_individuality(true, true).category, Individual);
        assert_eq!(classify_individuality(false, true).category, NonIndividualI);
        // bubble-chamber track: discernible now, not re-identifiable later
        assert_eq!(classify_individuality(true, false).category, NonIndividualII);
        assert_eq!(classify_individuality(false, false).category, NonIndividualIII);
        assert_eq!(NonIndividualIII.to_string(), "non-individual-iii");
    }
}
