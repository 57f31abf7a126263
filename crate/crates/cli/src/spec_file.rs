//! The JSON module file: one document per module, matrices row-major with
//! target coordinates as rows, coordinates ordered free then torsion.

use leech_core::abelian::{AbGroup, Int, IntMatrix};
use leech_core::module::{LeechModule, Side};
use leech_core::monoid::CyclicMonoid;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidSpec {
    pub index: usize,
    pub period: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSpec {
    Left,
    Right,
}

impl From<SideSpec> for Side {
    fn from(s: SideSpec) -> Side {
        match s {
            SideSpec::Left => Side::Left,
            SideSpec::Right => Side::Right,
        }
    }
}

impl From<Side> for SideSpec {
    fn from(s: Side) -> SideSpec {
        match s {
            Side::Left => SideSpec::Left,
            Side::Right => SideSpec::Right,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpecFile {
    pub monoid: MonoidSpec,
    pub side: SideSpec,
    pub groups: Vec<GroupSpec>,
    pub push1: Vec<Vec<Vec<i64>>>,
    pub pull1: Vec<Vec<Vec<i64>>>,
}

impl ModuleSpecFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Builds the module; shapes and canonical torsion are checked, the
    /// axioms are not.
    pub fn to_module(&self) -> Result<LeechModule, String> {
        let c =
            CyclicMonoid::new(self.monoid.index, self.monoid.period).map_err(|e| e.to_string())?;
        let groups = self
            .groups
            .iter()
            .enumerate()
            .map(|(x, g)| {
                AbGroup::new(
                    g.free_rank,
                    g.torsion.iter().map(|&d| Int::from(d)).collect(),
                )
                .map_err(|e| format!("groups[{x}]: {e}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let matrices = |name: &str, maps: &[Vec<Vec<i64>>]| -> Result<Vec<IntMatrix>, String> {
            maps.iter()
                .enumerate()
                .map(|(x, rows)| {
                    // an empty row list is a map into the trivial group
                    let width = self.source_width(c, x, &groups);
                    if rows.is_empty() {
                        return Ok(IntMatrix::zeros(0, width));
                    }
                    if rows.iter().all(Vec::is_empty) {
                        return Ok(IntMatrix::zeros(rows.len(), 0));
                    }
                    IntMatrix::from_rows(rows).map_err(|e| format!("{name}[{x}]: {e}"))
                })
                .collect()
        };
        let push1 = matrices("push1", &self.push1)?;
        let pull1 = matrices("pull1", &self.pull1)?;
        LeechModule::new(c, self.side.into(), groups, push1, pull1).map_err(|e| e.to_string())
    }

    fn source_width(&self, c: CyclicMonoid, x: usize, groups: &[AbGroup]) -> usize {
        let s = match self.side {
            SideSpec::Left => x,
            SideSpec::Right => c.add(x, 1),
        };
        groups.get(s).map_or(0, AbGroup::ngens)
    }

    pub fn from_module(a: &LeechModule) -> Self {
        let c = a.monoid();
        let matrix = |m: &IntMatrix| -> Vec<Vec<i64>> {
            (0..m.rows())
                .map(|i| {
                    m.row(i)
                        .iter()
                        .map(|v| i64::try_from(v).expect("entry fits in i64"))
                        .collect()
                })
                .collect()
        };
        ModuleSpecFile {
            monoid: MonoidSpec {
                index: c.index(),
                period: c.period(),
            },
            side: a.side().into(),
            groups: a
                .groups()
                .iter()
                .map(|g| GroupSpec {
                    free_rank: g.free_rank(),
                    torsion: g
                        .torsion()
                        .iter()
                        .map(|d| u64::try_from(d).expect("order fits in u64"))
                        .collect(),
                })
                .collect(),
            push1: c.elements().map(|x| matrix(a.push1(x).matrix())).collect(),
            pull1: c.elements().map(|x| matrix(a.pull1(x).matrix())).collect(),
        }
    }
}
