//! Named body-part joint groups used by the joint mask.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::skeleton::{Schema, FULL_TO_SIMPLIFIED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupName {
    UpperBody,
    LowerBody,
    Trunk,
    Limbs,
}

impl GroupName {
    pub const ALL: [GroupName; 4] = [
        GroupName::UpperBody,
        GroupName::LowerBody,
        GroupName::Trunk,
        GroupName::Limbs,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupName::UpperBody => "upper_body",
            GroupName::LowerBody => "lower_body",
            GroupName::Trunk => "trunk",
            GroupName::Limbs => "limbs",
        }
    }

    /// Members in the Full25 numbering.
    fn full25_members(self) -> &'static [usize] {
        match self {
            GroupName::Trunk => &[0, 1, 2, 3, 20],
            GroupName::UpperBody => &[2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 20, 21, 22, 23, 24],
            GroupName::LowerBody => &[12, 13, 14, 15, 16, 17, 18, 19],
            GroupName::Limbs => &[
                4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 21, 22, 23, 24,
            ],
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GroupName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        match norm.as_str() {
            "upper_body" | "upperbody" | "upper" => Ok(GroupName::UpperBody),
            "lower_body" | "lowerbody" | "lower" => Ok(GroupName::LowerBody),
            "trunk" => Ok(GroupName::Trunk),
            "limbs" => Ok(GroupName::Limbs),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointGroup {
    pub name: GroupName,
    pub schema: Schema,
    pub members: BTreeSet<usize>,
}

/// Fixed membership of a named group. Simplified17 members are the images of
/// the Full25 members under the simplification map.
pub fn joint_group(name: GroupName, schema: Schema) -> JointGroup {
    let full = name.full25_members().iter().copied();
    let members = match schema {
        Schema::Full25 => full.collect(),
        Schema::Simplified17 => full.map(|j| FULL_TO_SIMPLIFIED[j]).collect(),
    };
    JointGroup {
        name,
        schema,
        members,
    }
}

/// Parses the group name first, so unknown names surface as an error.
pub fn joint_group_by_name(name: &str, schema: Schema) -> Result<JointGroup, Error> {
    Ok(joint_group(name.parse()?, schema))
}
