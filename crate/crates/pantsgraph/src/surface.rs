use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Closed { genus: u32 },
    PuncturedTorus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub model: Model,
}

impl SurfaceSpec {
    pub fn closed(genus: u32) -> Result<Self> {
        if genus < 2 {
            return Err(Error::MalformedCoordinates(format!(
                "closed model requires genus >= 2, got {genus}"
            )));
        }
        Ok(SurfaceSpec { model: Model::Closed { genus } })
    }

    pub const fn genus2() -> Self {
        SurfaceSpec { model: Model::Closed { genus: 2 } }
    }

    pub const fn punctured_torus() -> Self {
        SurfaceSpec { model: Model::PuncturedTorus }
    }

    pub fn genus(&self) -> u32 {
        match self.model {
            Model::Closed { genus } => genus,
            Model::PuncturedTorus => 1,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.model, Model::Closed { .. })
    }

    pub fn num_pants_curves(&self) -> usize {
        match self.model {
            Model::Closed { genus } => 3 * genus as usize - 3,
            Model::PuncturedTorus => 1,
        }
    }

    pub fn num_generators(&self) -> usize {
        match self.model {
            Model::Closed { genus } => 2 * genus as usize + 1,
            Model::PuncturedTorus => 2,
        }
    }

    /// Errors unless the surface is the closed genus-2 surface the curve
    /// engine implements.
    pub fn require_engine(&self) -> Result<()> {
        match self.model {
            Model::Closed { genus: 2 } => Ok(()),
            Model::Closed { genus } => Err(Error::UnsupportedGenus(genus)),
            Model::PuncturedTorus => Err(Error::WrongModel("punctured-torus".into())),
        }
    }

    pub fn same_as(&self, other: &SurfaceSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SurfaceMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.model {
            Model::Closed { genus } => write!(f, "closed genus={genus}"),
            Model::PuncturedTorus => write!(f, "punctured-torus"),
        }
    }
}
