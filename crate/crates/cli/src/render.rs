//! Table renderings. Every format carries the same data: one group per
//! degree, as a free rank and a divisibility chain of torsion orders.

use clap::ValueEnum;
use leech_core::abelian::{AbGroup, Int};
use leech_core::module::Side;
use leech_core::monoid::CyclicMonoid;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

/// `H^n` for left modules, `H_n` for right modules, degrees `0..`.
pub struct Table {
    pub monoid: CyclicMonoid,
    pub side: Side,
    pub groups: Vec<AbGroup>,
}

#[derive(Serialize)]
struct JsonTable {
    monoid: JsonMonoid,
    side: String,
    kind: &'static str,
    degrees: Vec<JsonDegree>,
}

#[derive(Serialize)]
struct JsonMonoid {
    index: usize,
    period: usize,
}

#[derive(Serialize)]
struct JsonDegree {
    degree: usize,
    group: Value,
}

/// Orders that overflow `u64` are written as decimal strings.
fn order_value(d: &Int) -> Value {
    u64::try_from(d).map_or_else(|_| Value::String(d.to_string()), Value::from)
}

pub fn group_json(g: &AbGroup) -> Value {
    serde_json::json!({
        "rank": g.free_rank(),
        "torsion": g.torsion().iter().map(order_value).collect::<Vec<_>>(),
    })
}

fn latex_group(g: &AbGroup) -> String {
    let mut parts = Vec::new();
    match g.free_rank() {
        0 => {}
        1 => parts.push(r"\mathbb{Z}".to_string()),
        r => parts.push(format!(r"\mathbb{{Z}}^{{{r}}}")),
    }
    parts.extend(g.torsion().iter().map(|d| format!(r"\mathbb{{Z}}/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(r" \oplus ")
    }
}

impl Table {
    fn symbol(&self, n: usize) -> String {
        match self.side {
            Side::Left => format!("H^{n}"),
            Side::Right => format!("H_{n}"),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self
                .groups
                .iter()
                .enumerate()
                .map(|(n, g)| format!("{}\t{g}\n", self.symbol(n)))
                .collect(),
            Format::Json => {
                let table = JsonTable {
                    monoid: JsonMonoid {
                        index: self.monoid.index(),
                        period: self.monoid.period(),
                    },
                    side: self.side.to_string(),
                    kind: match self.side {
                        Side::Left => "cohomology",
                        Side::Right => "homology",
                    },
                    degrees: self
                        .groups
                        .iter()
                        .enumerate()
                        .map(|(degree, g)| JsonDegree {
                            degree,
                            group: group_json(g),
                        })
                        .collect(),
                };
                let mut out = serde_json::to_string_pretty(&table).expect("plain data");
                out.push('\n');
                out
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["degree", "rank", "torsion"])
                    .expect("in-memory writer");
                for (n, g) in self.groups.iter().enumerate() {
                    let torsion: Vec<String> =
                        g.torsion().iter().map(ToString::to_string).collect();
                    w.write_record([n.to_string(), g.free_rank().to_string(), torsion.join(" ")])
                        .expect("in-memory writer");
                }
                String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii")
            }
            Format::Latex => {
                let head = match self.side {
                    Side::Left => "$H^n$",
                    Side::Right => "$H_n$",
                };
                let mut out = format!("\\begin{{tabular}}{{r|l}}\n$n$ & {head} \\\\\n\\hline\n");
                for (n, g) in self.groups.iter().enumerate() {
                    out.push_str(&format!("{n} & ${}$ \\\\\n", latex_group(g)));
                }
                out.push_str("\\end{tabular}\n");
                out
            }
        }
    }
}

/// Parses `0`, `Z`, `Z^2 + Z/2 + Z/6` and the like into canonical form.
pub fn parse_group(text: &str) -> Result<AbGroup, String> {
    let mut free = 0usize;
    let mut orders = Vec::new();
    for part in text.split('+').map(str::trim) {
        match part {
            "0" => {}
            "Z" => free += 1,
            _ => {
                if let Some(r) = part.strip_prefix("Z^") {
                    free += r
                        .parse::<usize>()
                        .map_err(|_| format!("bad rank in {part:?}"))?;
                } else if let Some(d) = part.strip_prefix("Z/") {
                    orders.push(Int::from(
                        d.parse::<u64>()
                            .map_err(|_| format!("bad order in {part:?}"))?,
                    ));
                } else {
                    return Err(format!("cannot read {part:?} as a cyclic summand"));
                }
            }
        }
    }
    Ok(AbGroup::from_orders(free, &orders))
}
