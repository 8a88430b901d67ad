//! Serializable shapes of the public results.
//!
//! Variables are named `s` (one label) or `s1, s2, ...`; bracket lengths
//! are named `m1, m2, ...`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bfun::{AFunction, FactoredBFunction, Factor, LinearForm};
use crate::error::{Error, Result};
use crate::lace::{Connection, LaceDiagram};
use crate::quiver::{Interval, QuiverA};
use crate::rank::RankParameter;
use crate::render::LabeledDiagram;
use crate::slice::{SliceArrow, SliceRep, SliceVertex};

fn var_name(label: usize, single: bool) -> String {
    if single {
        "s".into()
    } else {
        format!("s{label}")
    }
}

fn parse_name(name: &str, prefix: char, single: bool) -> Result<usize> {
    if single && name.len() == 1 && name.starts_with(prefix) {
        return Ok(1);
    }
    name.strip_prefix(prefix)
        .and_then(|rest| rest.parse::<usize>().ok())
        .filter(|&l| l > 0)
        .ok_or_else(|| Error::Parse(format!("bad variable name '{name}'")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub coeffs: BTreeMap<String, u32>,
    pub constant: i64,
}

impl FormJson {
    pub fn from_form(form: &LinearForm, single: bool) -> FormJson {
        FormJson {
            coeffs: form.coeffs.iter().map(|(&l, &c)| (var_name(l, single), c)).collect(),
            constant: form.constant,
        }
    }

    pub fn to_form(&self, single: bool) -> Result<LinearForm> {
        let mut coeffs = BTreeMap::new();
        for (name, &c) in &self.coeffs {
            coeffs.insert(parse_name(name, 's', single)?, c);
        }
        Ok(LinearForm {
            coeffs,
            constant: self.constant,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub coeffs: BTreeMap<String, u32>,
    pub constant: i64,
    pub support: Vec<String>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFunctionJson {
    pub variables: Vec<String>,
    pub factors: Vec<FactorJson>,
}

impl From<&FactoredBFunction> for BFunctionJson {
    fn from(b: &FactoredBFunction) -> Self {
        let single = !b.multivariate;
        let variables = if single {
            vec!["s".into()]
        } else {
            (1..=b.labels).map(|l| var_name(l, false)).collect()
        };
        let factors = b
            .factors
            .iter()
            .map(|f| {
                let form = FormJson::from_form(&f.form, single);
                FactorJson {
                    coeffs: form.coeffs,
                    constant: form.constant,
                    support: f.support.iter().map(|l| format!("m{l}")).collect(),
                    multiplicity: f.multiplicity,
                }
            })
            .collect();
        BFunctionJson { variables, factors }
    }
}

impl TryFrom<BFunctionJson> for FactoredBFunction {
    type Error = Error;

    fn try_from(j: BFunctionJson) -> Result<Self> {
        let single = j.variables == ["s"];
        let mut factors = Vec::new();
        for f in &j.factors {
            let form = FormJson {
                coeffs: f.coeffs.clone(),
                constant: f.constant,
            }
            .to_form(single)?;
            let support = f
                .support
                .iter()
                .map(|m| parse_name(m, 'm', false))
                .collect::<Result<Vec<_>>>()?;
            factors.push(Factor {
                form,
                support,
                multiplicity: f.multiplicity,
            });
        }
        let mut b = FactoredBFunction {
            labels: j.variables.len(),
            multivariate: !single,
            factors,
        };
        b.canonicalize();
        Ok(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub edge: usize,
    pub pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Option<FormJson>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<String>,
    pub columns: Vec<usize>,
    pub edges: Vec<EdgeJson>,
}

impl From<&LaceDiagram> for DiagramJson {
    fn from(d: &LaceDiagram) -> Self {
        DiagramJson {
            quiver: None,
            columns: d.columns().to_vec(),
            edges: (1..d.r())
                .map(|a| EdgeJson {
                    edge: a,
                    pairs: d.pairs(a).iter().map(|&(l, r)| [l, r]).collect(),
                    labels: None,
                })
                .collect(),
        }
    }
}

impl From<&LabeledDiagram> for DiagramJson {
    fn from(d: &LabeledDiagram) -> Self {
        let mut out = DiagramJson::from(&d.diagram);
        out.quiver = Some(d.quiver.to_string());
        if !d.labels.is_empty() {
            for e in &mut out.edges {
                e.labels = Some(
                    e.pairs
                        .iter()
                        .map(|&[left, right]| {
                            d.labels
                                .get(&Connection {
                                    edge: e.edge,
                                    left,
                                    right,
                                })
                                .map(|f| FormJson::from_form(f, false))
                        })
                        .collect(),
                );
            }
        }
        out
    }
}

impl TryFrom<&DiagramJson> for LaceDiagram {
    type Error = Error;

    fn try_from(j: &DiagramJson) -> Result<Self> {
        let mut edges = vec![Vec::new(); j.columns.len().saturating_sub(1)];
        for e in &j.edges {
            if e.edge == 0 || e.edge > edges.len() {
                return Err(Error::InvalidDiagram(format!("no edge {}", e.edge)));
            }
            edges[e.edge - 1].extend(e.pairs.iter().map(|&[l, r]| (l, r)));
        }
        LaceDiagram::new(j.columns.clone(), edges)
    }
}

impl TryFrom<&DiagramJson> for LabeledDiagram {
    type Error = Error;

    fn try_from(j: &DiagramJson) -> Result<Self> {
        let quiver = QuiverA::parse(
            j.quiver
                .as_deref()
                .ok_or_else(|| Error::Parse("labelled diagram needs a quiver".into()))?,
        )?;
        let diagram = LaceDiagram::try_from(j)?;
        let mut labels = BTreeMap::new();
        for e in &j.edges {
            if let Some(ls) = &e.labels {
                if ls.len() != e.pairs.len() {
                    return Err(Error::LengthMismatch {
                        expected: e.pairs.len(),
                        got: ls.len(),
                    });
                }
                for (&[left, right], l) in e.pairs.iter().zip(ls) {
                    if let Some(f) = l {
                        labels.insert(
                            Connection {
                                edge: e.edge,
                                left,
                                right,
                            },
                            f.to_form(false)?,
                        );
                    }
                }
            }
        }
        LabeledDiagram::new(quiver, diagram, labels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceVertexJson {
    pub interval: [usize; 2],
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceArrowJson {
    pub from: usize,
    pub to: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceJson {
    pub vertices: Vec<SliceVertexJson>,
    pub arrows: Vec<SliceArrowJson>,
}

impl From<&SliceRep> for SliceJson {
    fn from(s: &SliceRep) -> Self {
        SliceJson {
            vertices: s
                .vertices
                .iter()
                .map(|v| SliceVertexJson {
                    interval: [v.interval.i, v.interval.j],
                    mult: v.mult,
                })
                .collect(),
            arrows: s
                .arrows
                .iter()
                .map(|a| SliceArrowJson {
                    from: a.from,
                    to: a.to,
                    count: a.count,
                })
                .collect(),
        }
    }
}

impl TryFrom<&SliceJson> for SliceRep {
    type Error = Error;

    fn try_from(j: &SliceJson) -> Result<Self> {
        let vertices = j
            .vertices
            .iter()
            .map(|v| {
                Ok(SliceVertex {
                    interval: Interval::new(v.interval[0], v.interval[1])?,
                    mult: v.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let arrows = j
            .arrows
            .iter()
            .map(|a| {
                if a.from >= vertices.len() || a.to >= vertices.len() {
                    return Err(Error::Shape(format!("arrow {} -> {} out of range", a.from, a.to)));
                }
                Ok(SliceArrow {
                    from: a.from,
                    to: a.to,
                    count: a.count,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SliceRep { vertices, arrows })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AFormJson {
    pub form: FormJson,
    /// Exponent of the form as a combination of `m1, m2, ...`.
    pub exponents: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AFunctionJson {
    pub variables: Vec<String>,
    pub forms: Vec<AFormJson>,
}

impl From<&AFunction> for AFunctionJson {
    fn from(a: &AFunction) -> Self {
        AFunctionJson {
            variables: (1..=a.labels).map(|l| var_name(l, false)).collect(),
            forms: a
                .symbolic()
                .into_iter()
                .map(|(f, exps)| AFormJson {
                    form: FormJson::from_form(&f, false),
                    exponents: exps.into_iter().map(|(l, e)| (format!("m{l}"), e)).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&AFunctionJson> for AFunction {
    type Error = Error;

    fn try_from(j: &AFunctionJson) -> Result<Self> {
        let labels = j.variables.len();
        let mut per_label = vec![BTreeMap::new(); labels];
        for f in &j.forms {
            let form = f.form.to_form(false)?;
            for (m, &e) in &f.exponents {
                let l = parse_name(m, 'm', false)?;
                if l > labels {
                    return Err(Error::Parse(format!("exponent on unknown label {m}")));
                }
                per_label[l - 1].insert(form.clone(), e);
            }
        }
        Ok(AFunction { labels, per_label })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RanksJson {
    pub rows: Vec<Vec<usize>>,
}

impl From<&RankParameter> for RanksJson {
    fn from(r: &RankParameter) -> Self {
        RanksJson { rows: r.rows().to_vec() }
    }
}

impl TryFrom<&RanksJson> for RankParameter {
    type Error = Error;

    fn try_from(j: &RanksJson) -> Result<Self> {
        RankParameter::from_rows(j.rows.clone())
    }
}
