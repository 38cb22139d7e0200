use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FieldSpec, PolyError, Polynomial};

/// Polynomials over a common field and variable count, read as `f_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    field: FieldSpec,
    nvars: usize,
    polys: Vec<Polynomial>,
}

impl PolySystem {
    pub fn new(field: FieldSpec, nvars: usize, polys: Vec<Polynomial>) -> Result<Self, PolyError> {
        for p in &polys {
            if p.field() != field {
                return Err(PolyError::FieldMismatch {
                    left: field,
                    right: p.field(),
                });
            }
            if p.nvars() != nvars {
                return Err(PolyError::VarCountMismatch {
                    left: nvars,
                    right: p.nvars(),
                });
            }
        }
        Ok(PolySystem {
            field,
            nvars,
            polys,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Largest total degree among the equations (0 for an empty system).
    pub fn max_degree(&self) -> u32 {
        self.polys
            .iter()
            .filter_map(Polynomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn is_satisfied_by(&self, point: &[super::Coeff]) -> Result<bool, PolyError> {
        for p in &self.polys {
            if !num_traits::Zero::is_zero(&p.evaluate(point)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Serialize, Deserialize)]
struct SystemWire {
    field: FieldSpec,
    vars: usize,
    polys: Vec<Polynomial>,
}

impl Serialize for PolySystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SystemWire {
            field: self.field,
            vars: self.nvars,
            polys: self.polys.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolySystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = SystemWire::deserialize(deserializer)?;
        FieldSpec::new(wire.field.characteristic()).map_err(serde::de::Error::custom)?;
        PolySystem::new(wire.field, wire.vars, wire.polys).map_err(serde::de::Error::custom)
    }
}
