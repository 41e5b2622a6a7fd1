//! Static taxonomy of Kodaira fibre types.
//!
//! Seven types carry finite-order monodromy and can appear in an elliptic
//! fibration with constant j-invariant; I0 (smooth) and the semistable
//! cycles Ik are representable for completeness but Ik carries infinite
//! monodromy order and is rejected wherever constant j is assumed.

use crate::sl2z::{self, Order, UnimodularMatrix};
use serde_json::json;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KodairaError {
    #[error("unknown Kodaira fibre kind {0:?}")]
    UnknownKind(String),
}

/// Kodaira type of a fibre of an elliptic surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FibreKind {
    I0,
    /// Cycle of k >= 1 rational curves; infinite monodromy order.
    Ik(u32),
    II,
    III,
    IV,
    I0Star,
    IVStar,
    IIIStar,
    IIStar,
}

impl FibreKind {
    /// The seven kinds with finite-order monodromy, in table order.
    pub fn finite_monodromy_types() -> [FibreKind; 7] {
        [
            FibreKind::II,
            FibreKind::III,
            FibreKind::IV,
            FibreKind::I0Star,
            FibreKind::IIStar,
            FibreKind::IIIStar,
            FibreKind::IVStar,
        ]
    }

    pub fn is_starred(&self) -> bool {
        matches!(
            self,
            FibreKind::I0Star | FibreKind::IIStar | FibreKind::IIIStar | FibreKind::IVStar
        )
    }
}

impl fmt::Display for FibreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FibreKind::I0 => write!(f, "I0"),
            FibreKind::Ik(k) => write!(f, "I{k}"),
            FibreKind::II => write!(f, "II"),
            FibreKind::III => write!(f, "III"),
            FibreKind::IV => write!(f, "IV"),
            FibreKind::I0Star => write!(f, "I0star"),
            FibreKind::IVStar => write!(f, "IVstar"),
            FibreKind::IIIStar => write!(f, "IIIstar"),
            FibreKind::IIStar => write!(f, "IIstar"),
        }
    }
}

impl FromStr for FibreKind {
    type Err = KodairaError;

    fn from_str(s: &str) -> Result<Self, KodairaError> {
        let t = s.trim();
        let lowered = t.to_ascii_lowercase();
        let kind = match lowered.as_str() {
            "i0" => FibreKind::I0,
            "ii" => FibreKind::II,
            "iii" => FibreKind::III,
            "iv" => FibreKind::IV,
            "i0star" | "i0*" => FibreKind::I0Star,
            "iistar" | "ii*" => FibreKind::IIStar,
            "iiistar" | "iii*" => FibreKind::IIIStar,
            "ivstar" | "iv*" => FibreKind::IVStar,
            _ => {
                if let Some(num) = lowered.strip_prefix('i') {
                    if let Ok(k) = num.parse::<u32>() {
                        if k >= 1 {
                            return Ok(FibreKind::Ik(k));
                        }
                    }
                }
                return Err(KodairaError::UnknownKind(s.to_string()));
            }
        };
        Ok(kind)
    }
}

/// One row of the fibre table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaFibre {
    pub kind: FibreKind,
    /// Affine Dynkin label, stored as a plain string ("A~0", "E~8", ...).
    pub dynkin: String,
    pub euler: u32,
    /// Conjugacy-class representative of the monodromy.
    pub monodromy: UnimodularMatrix,
    pub monodromy_order: Order,
}

impl KodairaFibre {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "Kodaira type": self.kind.to_string(),
            "Dynkin diagram": self.dynkin,
            "Euler number": self.euler,
            "monodromy": self.monodromy.to_string(),
            "order": self.monodromy_order.to_string(),
        })
    }
}

/// The populated row for a fibre kind.
pub fn fibre_for(kind: FibreKind) -> KodairaFibre {
    let alpha = UnimodularMatrix::alpha;
    let beta = UnimodularMatrix::beta;
    let (dynkin, euler, monodromy, ord) = match kind {
        FibreKind::I0 => ("-", 0, UnimodularMatrix::identity(), Order::Finite(1)),
        FibreKind::Ik(k) => {
            // Unipotent class [[1,k],[0,1]]; Euler number k.
            let m = UnimodularMatrix::new(1.into(), k.into(), 0.into(), 1.into()).unwrap();
            return KodairaFibre {
                kind,
                dynkin: format!("A~{}", k - 1),
                euler: k,
                monodromy: m,
                monodromy_order: Order::Infinite,
            };
        }
        FibreKind::II => ("A~0", 2, alpha(), Order::Finite(6)),
        FibreKind::III => ("A~1", 3, beta(), Order::Finite(4)),
        FibreKind::IV => ("A~2", 4, alpha().pow(2), Order::Finite(3)),
        FibreKind::I0Star => ("D~4", 6, alpha().pow(3), Order::Finite(2)),
        FibreKind::IIStar => ("E~8", 10, alpha().pow(5), Order::Finite(6)),
        FibreKind::IIIStar => ("E~7", 9, beta().pow(3), Order::Finite(4)),
        FibreKind::IVStar => ("E~6", 8, alpha().pow(4), Order::Finite(3)),
    };
    KodairaFibre {
        kind,
        dynkin: dynkin.to_string(),
        euler,
        monodromy,
        monodromy_order: ord,
    }
}

/// The four starred rows, ordered by Euler number: I0*, IV*, III*, II*.
pub fn starred_types() -> Vec<KodairaFibre> {
    let mut rows: Vec<KodairaFibre> = FibreKind::finite_monodromy_types()
        .into_iter()
        .filter(|k| k.is_starred())
        .map(fibre_for)
        .collect();
    rows.sort_by_key(|r| r.euler);
    rows
}

/// The seven finite-monodromy rows as a JSON array in table order.
pub fn table_json() -> serde_json::Value {
    serde_json::Value::Array(
        FibreKind::finite_monodromy_types()
            .into_iter()
            .map(|k| fibre_for(k).to_json())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows_match_monodromy_data() {
        let a = UnimodularMatrix::alpha();
        let b = UnimodularMatrix::beta();
        let expected = [
            (FibreKind::II, "A~0", 2, a.clone(), 6),
            (FibreKind::III, "A~1", 3, b.clone(), 4),
            (FibreKind::IV, "A~2", 4, a.pow(2), 3),
            (FibreKind::I0Star, "D~4", 6, a.pow(3), 2),
            (FibreKind::IIStar, "E~8", 10, a.pow(5), 6),
            (FibreKind::IIIStar, "E~7", 9, b.pow(3), 4),
            (FibreKind::IVStar, "E~6", 8, a.pow(4), 3),
        ];
        for (kind, dynkin, euler, monodromy, ord) in expected {
            let row = fibre_for(kind);
            assert_eq!(row.dynkin, dynkin);
            assert_eq!(row.euler, euler);
            assert_eq!(row.monodromy, monodromy);
            assert_eq!(row.monodromy_order, Order::Finite(ord));
        }
    }

    #[test]
    fn stored_orders_agree_with_recomputation() {
        for kind in FibreKind::finite_monodromy_types() {
            let row = fibre_for(kind);
            assert_eq!(sl2z::order(&row.monodromy), row.monodromy_order);
        }
        // I0* monodromy is the central element.
        assert!(fibre_for(FibreKind::I0Star).monodromy.is_neg_identity());
    }

    #[test]
    fn starred_rows_and_euler_sum() {
        let rows = starred_types();
        let kinds: Vec<FibreKind> = rows.iter().map(|r| r.kind).collect();
        assert_eq!(
            kinds,
            vec![
                FibreKind::I0Star,
                FibreKind::IVStar,
                FibreKind::IIIStar,
                FibreKind::IIStar
            ]
        );
        let eulers: Vec<u32> = rows.iter().map(|r| r.euler).collect();
        assert_eq!(eulers, vec![6, 8, 9, 10]);
        assert_eq!(eulers.iter().sum::<u32>(), 33);
    }

    #[test]
    fn semistable_cycle_is_flagged_infinite() {
        let row = fibre_for(FibreKind::Ik(5));
        assert_eq!(row.euler, 5);
        assert_eq!(row.monodromy_order, Order::Infinite);
        assert_eq!(sl2z::order(&row.monodromy), Order::Infinite);
        let smooth = fibre_for(FibreKind::I0);
        assert_eq!(smooth.euler, 0);
        assert!(smooth.monodromy.is_identity());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("IVstar".parse::<FibreKind>().unwrap(), FibreKind::IVStar);
        assert_eq!("IV*".parse::<FibreKind>().unwrap(), FibreKind::IVStar);
        assert_eq!("I0".parse::<FibreKind>().unwrap(), FibreKind::I0);
        assert_eq!("I7".parse::<FibreKind>().unwrap(), FibreKind::Ik(7));
        assert!("V".parse::<FibreKind>().is_err());
        for kind in FibreKind::finite_monodromy_types() {
            assert_eq!(kind.to_string().parse::<FibreKind>().unwrap(), kind);
        }
    }
}
