//! b-functions of one and several variables, F-sets, superposition and
//! a-functions.
//!
//! Every factor of a b-function is a shifted linear form in the invariant
//! labels `s1..sl`. In the several-variable case a factor stands for the
//! rising product `[A]_m = A (A+1) ... (A+m-1)` whose length `m` is the sum
//! of `m_i` over the labels in its support.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::{check_index, enumerate_invariants, segment_counts, InvariantIndex};
use crate::lace::{diagram_to_matrices, exact_diagram, Connection, LaceDiagram};
use crate::linalg::{rat, Rational};
use crate::quiver::{DimVector, Direction, QuiverA};
use crate::rank::{rank_parameter, RankParameter};

/// `sum_i coeffs[i] * s_i + constant`; labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeffs: BTreeMap<usize, u32>,
    pub constant: i64,
}

impl LinearForm {
    pub fn new(labels: impl IntoIterator<Item = usize>, constant: i64) -> LinearForm {
        let mut coeffs = BTreeMap::new();
        for l in labels {
            *coeffs.entry(l).or_insert(0) += 1;
        }
        LinearForm { coeffs, constant }
    }

    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().filter(|(_, &c)| c > 0).map(|(&l, _)| l).collect()
    }

    pub fn shifted(&self, by: i64) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.clone(),
            constant: self.constant + by,
        }
    }

    pub fn eval(&self, s: &[Rational]) -> Rational {
        let mut v = rat(self.constant);
        for (&l, &c) in &self.coeffs {
            v += &s[l - 1] * rat(i64::from(c));
        }
        v
    }

    /// `s1+s2+5`; with `single` the only variable prints as `s`.
    pub fn render(&self, single: bool) -> String {
        let mut parts = Vec::new();
        for (&l, &c) in &self.coeffs {
            let name = if single { "s".to_string() } else { format!("s{l}") };
            parts.push(if c == 1 { name } else { format!("{c}{name}") });
        }
        let mut out = parts.join("+");
        if self.constant != 0 || out.is_empty() {
            if out.is_empty() {
                out = self.constant.to_string();
            } else if self.constant > 0 {
                out.push_str(&format!("+{}", self.constant));
            } else {
                out.push_str(&self.constant.to_string());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub form: LinearForm,
    /// Labels whose `m_i` add up to the bracket length; empty for a plain power.
    pub support: Vec<usize>,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredBFunction {
    /// Number of labels; `1` with `multivariate == false` for `b(s)`.
    pub labels: usize,
    pub multivariate: bool,
    pub factors: Vec<Factor>,
}

/// Support size, support, coefficients, constant.
type FactorKey = (usize, Vec<usize>, Vec<(usize, u32)>, i64);

impl FactoredBFunction {
    pub fn one_variable(constants: impl IntoIterator<Item = i64>) -> FactoredBFunction {
        let mut b = FactoredBFunction {
            labels: 1,
            multivariate: false,
            factors: constants
                .into_iter()
                .map(|c| Factor {
                    form: LinearForm::new([1], c),
                    support: Vec::new(),
                    multiplicity: 1,
                })
                .collect(),
        };
        b.canonicalize();
        b
    }

    pub fn brackets(labels: usize, forms: impl IntoIterator<Item = LinearForm>) -> FactoredBFunction {
        let mut b = FactoredBFunction {
            labels,
            multivariate: true,
            factors: forms
                .into_iter()
                .map(|f| Factor {
                    support: f.support(),
                    form: f,
                    multiplicity: 1,
                })
                .collect(),
        };
        b.canonicalize();
        b
    }

    /// Orders by support (smaller first), then by constant, merging equal factors.
    pub fn canonicalize(&mut self) {
        let mut merged: BTreeMap<FactorKey, u32> = BTreeMap::new();
        for f in self.factors.drain(..) {
            let key = (
                f.support.len(),
                f.support.clone(),
                f.form.coeffs.iter().map(|(&l, &c)| (l, c)).collect(),
                f.form.constant,
            );
            *merged.entry(key).or_insert(0) += f.multiplicity;
        }
        self.factors = merged
            .into_iter()
            .filter(|(_, m)| *m > 0)
            .map(|((_, support, coeffs, constant), multiplicity)| Factor {
                form: LinearForm {
                    coeffs: coeffs.into_iter().collect(),
                    constant,
                },
                support,
                multiplicity,
            })
            .collect();
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.multiplicity).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Constant term -> multiplicity, for a one-variable b-function.
    pub fn root_shifts(&self) -> BTreeMap<i64, u32> {
        let mut m = BTreeMap::new();
        for f in &self.factors {
            *m.entry(f.form.constant).or_insert(0) += f.multiplicity;
        }
        m
    }

    /// Linear factors of the polynomial in `s1..sl` obtained by fixing `m`.
    pub fn linear_factors_at(&self, m: &[u64]) -> Result<BTreeMap<LinearForm, u64>> {
        if self.multivariate && m.len() != self.labels {
            return Err(Error::LengthMismatch {
                expected: self.labels,
                got: m.len(),
            });
        }
        let mut out = BTreeMap::new();
        for f in &self.factors {
            if !self.multivariate {
                *out.entry(f.form.clone()).or_insert(0) += u64::from(f.multiplicity);
                continue;
            }
            let len: u64 = f.support.iter().map(|&l| m[l - 1]).sum();
            for t in 0..len {
                *out.entry(f.form.shifted(t as i64)).or_insert(0) += u64::from(f.multiplicity);
            }
        }
        Ok(out)
    }

    /// Text form: `(s+5)^3` or `[s1+s2+5]_{m1+m2}^2`, factors joined by spaces.
    pub fn render(&self) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| {
                let power = if f.multiplicity > 1 {
                    format!("^{}", f.multiplicity)
                } else {
                    String::new()
                };
                if self.multivariate {
                    let len: Vec<String> = f.support.iter().map(|l| format!("m{l}")).collect();
                    format!("[{}]_{{{}}}{power}", f.form.render(false), len.join("+"))
                } else {
                    format!("({}){power}", f.form.render(true))
                }
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for FactoredBFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Each `t` in `p+1..=q` with segment count `c` contributes
/// `(s + n_t - c + 1) ... (s + n_t)`.
pub fn b_one_variable(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<FactoredBFunction> {
    check_index(quiver, n, idx)?;
    let counts = segment_counts(quiver, n, idx.p, idx.q).ok_or(Error::NotAnInvariant { p: idx.p, q: idx.q })?;
    let mut constants = Vec::new();
    for (k, &c) in counts.iter().enumerate() {
        let nt = n.at(idx.p + 1 + k) as i64;
        let c = c as i64;
        constants.extend((1..=c).map(|lambda| nt - c + lambda));
    }
    Ok(FactoredBFunction::one_variable(constants))
}

/// Per column `k = 2..=r`, the range `n_k - N_{k-1,k} + 1 ..= n_k` or nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FSet {
    pub columns: Vec<Option<(i64, i64)>>,
}

impl FSet {
    pub fn members(&self, column_pos: usize) -> Vec<i64> {
        match self.columns[column_pos] {
            Some((lo, hi)) => (lo..=hi).collect(),
            None => Vec::new(),
        }
    }
}

pub fn f_set(ranks: &RankParameter) -> FSet {
    let columns = (2..=ranks.r())
            .map(|k| {
                let nk = ranks.get(k, k) as i64;
                let adj = ranks.get(k - 1, k) as i64;
                (adj > 0).then(|| (nk - adj + 1, nk))
            })
            .collect();
    FSet { columns }
}

pub fn b_from_fset(fs: &FSet) -> FactoredBFunction {
    let constants = (0..fs.columns.len()).flat_map(|k| fs.members(k));
    FactoredBFunction::one_variable(constants)
}

pub fn exact_rank_parameter(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<RankParameter> {
    let d = exact_diagram(quiver, n, idx)?;
    rank_parameter(quiver, n, &diagram_to_matrices(quiver, n, &d)?)
}

/// Forms per column after merging equal constants across labels.
pub fn superpose_by_column(fsets: &[FSet], labels: &[usize]) -> Result<Vec<Vec<LinearForm>>> {
    if fsets.len() != labels.len() {
        return Err(Error::LengthMismatch {
            expected: fsets.len(),
            got: labels.len(),
        });
    }
    let Some(first) = fsets.first() else {
        return Ok(Vec::new());
    };
    let width = first.columns.len();
    if let Some(bad) = fsets.iter().find(|f| f.columns.len() != width) {
        return Err(Error::LengthMismatch {
            expected: width,
            got: bad.columns.len(),
        });
    }
    let mut out = Vec::with_capacity(width);
    for k in 0..width {
        let mut by_constant: BTreeMap<i64, BTreeMap<usize, u32>> = BTreeMap::new();
        for (fs, &label) in fsets.iter().zip(labels) {
            for c in fs.members(k) {
                *by_constant.entry(c).or_default().entry(label).or_insert(0) += 1;
            }
        }
        let mut forms = Vec::new();
        for (constant, coeffs) in by_constant {
            if let Some((&label, &coefficient)) = coeffs.iter().find(|(_, &c)| c > 1) {
                return Err(Error::Superposition {
                    column: k + 2,
                    constant,
                    label,
                    coefficient,
                });
            }
            forms.push(LinearForm { coeffs, constant });
        }
        out.push(forms);
    }
    Ok(out)
}

pub fn superpose(fsets: &[FSet], labels: &[usize]) -> Result<Vec<LinearForm>> {
    Ok(superpose_by_column(fsets, labels)?.into_iter().flatten().collect())
}

/// Labels are assigned `1..=l` in the sorted order of the invariants.
pub fn b_multivariate(quiver: &QuiverA, n: &DimVector) -> Result<FactoredBFunction> {
    let invariants = enumerate_invariants(quiver, n);
    let fsets = invariants
        .iter()
        .map(|idx| exact_rank_parameter(quiver, n, idx).map(|r| f_set(&r)))
        .collect::<Result<Vec<_>>>()?;
    let labels: Vec<usize> = (1..=invariants.len()).collect();
    let forms = superpose(&fsets, &labels)?;
    Ok(FactoredBFunction::brackets(invariants.len(), forms))
}

/// `[A]_m = A (A+1) ... (A+m-1)` multiplied over all factors.
pub fn evaluate_bracket_product(b: &FactoredBFunction, m: &[u64], s: &[Rational]) -> Result<Rational> {
    if s.len() != b.labels {
        return Err(Error::LengthMismatch {
            expected: b.labels,
            got: s.len(),
        });
    }
    let mut acc = Rational::one();
    for (form, mult) in b.linear_factors_at(m)? {
        let v = form.eval(s);
        for _ in 0..mult {
            acc *= &v;
        }
    }
    Ok(acc)
}

/// The one-variable b-function of label `i` read off a several-variable one
/// by setting `m = e_i` and `s_j = 0` for `j != i`.
pub fn specialize(b: &FactoredBFunction, i: usize) -> Result<FactoredBFunction> {
    if !b.multivariate {
        return Ok(b.clone());
    }
    if i == 0 || i > b.labels {
        return Err(Error::LengthMismatch {
            expected: b.labels,
            got: i,
        });
    }
    let mut constants = Vec::new();
    for f in &b.factors {
        if f.support.contains(&i) {
            let coeff = f.form.coeffs.get(&i).copied().unwrap_or(0);
            if coeff != 1 {
                return Err(Error::NonLinearFactor(format!("coefficient {coeff} on s{i}")));
            }
            constants.extend(std::iter::repeat_n(f.form.constant, f.multiplicity as usize));
        }
    }
    Ok(FactoredBFunction::one_variable(constants))
}

/// Constant attached to a connection: its dot's position in the column it
/// points into, counted from the top for `Right` edges and from the bottom
/// for `Left` edges.
pub fn connection_constant(quiver: &QuiverA, n: &DimVector, c: &Connection) -> i64 {
    match quiver.direction(c.edge) {
        Direction::Right => c.right as i64,
        Direction::Left => (n.at(c.edge + 1) + 1 - c.right) as i64,
    }
}

/// Union of the exact diagrams with each connection labelled by the sum
/// of the labels whose diagram uses it.
pub fn superposed_labels(quiver: &QuiverA, n: &DimVector) -> Result<BTreeMap<Connection, LinearForm>> {
    let mut out: BTreeMap<Connection, LinearForm> = BTreeMap::new();
    for (k, idx) in enumerate_invariants(quiver, n).iter().enumerate() {
        for c in exact_diagram(quiver, n, idx)?.connections() {
            let constant = connection_constant(quiver, n, &c);
            let entry = out.entry(c).or_insert_with(|| LinearForm {
                coeffs: BTreeMap::new(),
                constant,
            });
            *entry.coeffs.entry(k + 1).or_insert(0) += 1;
        }
    }
    Ok(out)
}

pub fn superposed_diagram(quiver: &QuiverA, n: &DimVector) -> Result<(LaceDiagram, BTreeMap<Connection, LinearForm>)> {
    let labels = superposed_labels(quiver, n)?;
    let mut edges = vec![Vec::new(); quiver.r() - 1];
    for c in labels.keys() {
        edges[c.edge - 1].push((c.left, c.right));
    }
    Ok((LaceDiagram::new(n.entries().to_vec(), edges)?, labels))
}

/// `a_m(s) = prod_i a_i(s)^{m_i}`, each `a_i` a product of homogeneous linear forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AFunction {
    pub labels: usize,
    /// `per_label[i-1]` maps a form (constant 0) to its exponent in `a_i`.
    pub per_label: Vec<BTreeMap<LinearForm, u32>>,
}

impl AFunction {
    /// Exponents of `a_m` for concrete `m`.
    pub fn at(&self, m: &[u64]) -> Result<BTreeMap<LinearForm, u64>> {
        if m.len() != self.labels {
            return Err(Error::LengthMismatch {
                expected: self.labels,
                got: m.len(),
            });
        }
        let mut out = BTreeMap::new();
        for (i, forms) in self.per_label.iter().enumerate() {
            for (f, &e) in forms {
                if m[i] > 0 {
                    *out.entry(f.clone()).or_insert(0) += u64::from(e) * m[i];
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, m: &[u64], s: &[Rational]) -> Result<Rational> {
        let mut acc = Rational::one();
        for (f, e) in self.at(m)? {
            let v = f.eval(s);
            for _ in 0..e {
                acc *= &v;
            }
        }
        Ok(acc)
    }

    /// Symbolic exponents: each form with the list of `(label, multiple)`
    /// pairs whose `m_label * multiple` add up to its exponent.
    pub fn symbolic(&self) -> BTreeMap<LinearForm, BTreeMap<usize, u32>> {
        let mut out: BTreeMap<LinearForm, BTreeMap<usize, u32>> = BTreeMap::new();
        for (i, forms) in self.per_label.iter().enumerate() {
            for (f, &e) in forms {
                out.entry(f.clone()).or_default().insert(i + 1, e);
            }
        }
        out
    }

    /// `s1^{4m1} (s1+s2)^{2m1+2m2}` style rendering.
    pub fn render(&self) -> String {
        let sym = self.symbolic();
        if sym.is_empty() {
            return "1".into();
        }
        let mut entries: Vec<_> = sym.into_iter().collect();
        entries.sort_by_key(|(f, _)| (f.support().len(), f.support()));
        entries
            .iter()
            .map(|(f, exps)| {
                let exp: Vec<String> = exps
                    .iter()
                    .map(|(l, e)| if *e == 1 { format!("m{l}") } else { format!("{e}m{l}") })
                    .collect();
                let base = f.render(false);
                let base = if f.coeffs.len() > 1 { format!("({base})") } else { base };
                format!("{base}^{{{}}}", exp.join("+"))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn a_function(quiver: &QuiverA, n: &DimVector) -> Result<AFunction> {
    let invariants = enumerate_invariants(quiver, n);
    let labels = superposed_labels(quiver, n)?;
    let mut per_label = Vec::with_capacity(invariants.len());
    for idx in &invariants {
        let mut forms: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for c in exact_diagram(quiver, n, idx)?.connections() {
            let mut f = labels[&c].clone();
            f.constant = 0;
            *forms.entry(f).or_insert(0) += 1;
        }
        per_label.push(forms);
    }
    Ok(AFunction {
        labels: invariants.len(),
        per_label,
    })
}

/// True when every linear factor of `small` (with multiplicity) occurs in `big`.
pub fn divides(small: &BTreeMap<LinearForm, u64>, big: &BTreeMap<LinearForm, u64>) -> bool {
    small.iter().all(|(f, &e)| big.get(f).copied().unwrap_or(0) >= e)
}

pub fn all_constants_positive(b: &FactoredBFunction) -> bool {
    b.factors.iter().all(|f| f.form.constant > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::index;

    fn dims(v: &[usize]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    fn b1(v: &[i64]) -> FactoredBFunction {
        FactoredBFunction::one_variable(v.iter().copied())
    }

    #[test]
    fn one_variable_equioriented() {
        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        let b = b_one_variable(&q, &n, &index(&q, &n, 1, 5).unwrap()).unwrap();
        assert_eq!(b, b1(&[1, 2, 4, 5, 5, 5, 6, 6]));
        assert_eq!(b.render(), "(s+1) (s+2) (s+4) (s+5)^3 (s+6)^2");
        let b = b_one_variable(&q, &n, &index(&q, &n, 3, 4).unwrap()).unwrap();
        assert_eq!(b, b1(&[1, 2, 3, 4, 5, 6]));
    }

    #[test]
    fn one_variable_square_matrix() {
        let q = QuiverA::equioriented(2);
        for m in 1..6 {
            let n = dims(&[m, m]);
            let b = b_one_variable(&q, &n, &index(&q, &n, 1, 2).unwrap()).unwrap();
            assert_eq!(b, b1(&(1..=m as i64).collect::<Vec<_>>()));
        }
    }

    #[test]
    fn f_sets_from_examples() {
        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        let fs = f_set(&exact_rank_parameter(&q, &n, &index(&q, &n, 1, 5).unwrap()).unwrap());
        assert_eq!(fs.columns, vec![Some((4, 5)), Some((5, 6)), Some((5, 6)), Some((1, 2))]);
        let fs = f_set(&exact_rank_parameter(&q, &n, &index(&q, &n, 3, 4).unwrap()).unwrap());
        assert_eq!(b_from_fset(&fs), b1(&[1, 2, 3, 4, 5, 6]));

        let q = QuiverA::alternating(5);
        let n = dims(&[2, 5, 7, 4, 2]);
        let fs = f_set(&exact_rank_parameter(&q, &n, &index(&q, &n, 2, 5).unwrap()).unwrap());
        assert_eq!(fs.columns, vec![None, Some((3, 7)), Some((3, 4)), Some((1, 2))]);
        let fs = f_set(&exact_rank_parameter(&q, &n, &index(&q, &n, 1, 4).unwrap()).unwrap());
        assert_eq!(b_from_fset(&fs), b1(&[1, 2, 3, 4, 4, 5, 5, 6, 7]));
    }

    #[test]
    fn empty_fset_is_constant() {
        let ranks = RankParameter::from_rows(vec![vec![2, 0, 0], vec![3, 0], vec![1]]).unwrap();
        let fs = f_set(&ranks);
        assert!(fs.columns.iter().all(|c| c.is_none()));
        assert!(b_from_fset(&fs).is_constant());
    }

    #[test]
    fn superposition_single_column() {
        let one = |r: Option<(i64, i64)>| FSet { columns: vec![r] };
        let forms = superpose(
            &[one(Some((3, 5))), one(Some((4, 5))), one(None), one(Some((1, 5)))],
            &[1, 2, 3, 4],
        )
        .unwrap();
        let rendered: Vec<String> = forms.iter().map(|f| f.render(false)).collect();
        assert_eq!(rendered, vec!["s4+1", "s4+2", "s1+s4+3", "s1+s2+s4+4", "s1+s2+s4+5"]);

        let forms = superpose(&[one(Some((1, 6))), one(Some((5, 6)))], &[1, 2]).unwrap();
        let rendered: Vec<String> = forms.iter().map(|f| f.render(false)).collect();
        assert_eq!(rendered, vec!["s1+1", "s1+2", "s1+3", "s1+4", "s1+s2+5", "s1+s2+6"]);

        let forms = superpose(&[one(Some((2, 3)))], &[1]).unwrap();
        assert_eq!(forms, vec![LinearForm::new([1], 2), LinearForm::new([1], 3)]);
    }

    #[test]
    fn superposition_rejects_repeated_label() {
        let one = |r: Option<(i64, i64)>| FSet { columns: vec![r] };
        let err = superpose(&[one(Some((1, 2))), one(Some((2, 3)))], &[1, 1]).unwrap_err();
        assert!(matches!(err, Error::Superposition { label: 1, coefficient: 2, .. }));
        assert!(superpose(&[one(None), FSet { columns: vec![None, None] }], &[1, 2]).is_err());
    }

    fn bracket(labels: &[usize], c: i64) -> LinearForm {
        LinearForm::new(labels.iter().copied(), c)
    }

    #[test]
    fn multivariate_equioriented() {
        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        let b = b_multivariate(&q, &n).unwrap();
        // label 1 is (1,5), label 2 is (3,4)
        let mut forms = Vec::new();
        for c in [1, 2, 4, 5, 5, 6] {
            forms.push(bracket(&[1], c));
        }
        for c in 1..=4 {
            forms.push(bracket(&[2], c));
        }
        forms.push(bracket(&[1, 2], 5));
        forms.push(bracket(&[1, 2], 6));
        assert_eq!(b, FactoredBFunction::brackets(2, forms));
        assert_eq!(
            b.render(),
            "[s1+1]_{m1} [s1+2]_{m1} [s1+4]_{m1} [s1+5]_{m1}^2 [s1+6]_{m1} \
             [s2+1]_{m2} [s2+2]_{m2} [s2+3]_{m2} [s2+4]_{m2} [s1+s2+5]_{m1+m2} [s1+s2+6]_{m1+m2}"
        );
    }

    #[test]
    fn bracket_evaluation() {
        let b = FactoredBFunction::brackets(1, [bracket(&[1], 1)]);
        assert_eq!(evaluate_bracket_product(&b, &[2], &[rat(0)]).unwrap(), rat(2));
        assert_eq!(evaluate_bracket_product(&b, &[0], &[rat(7)]).unwrap(), rat(1));
        assert!(evaluate_bracket_product(&b, &[1, 1], &[rat(0)]).is_err());

        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        let b = b_multivariate(&q, &n).unwrap();
        let one = b_one_variable(&q, &n, &index(&q, &n, 3, 4).unwrap()).unwrap();
        for sigma in 0..3 {
            let lhs = evaluate_bracket_product(&b, &[0, 1], &[rat(0), rat(sigma)]).unwrap();
            let rhs = evaluate_bracket_product(&one, &[1], &[rat(sigma)]).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert_eq!(evaluate_bracket_product(&b, &[0, 0], &[rat(3), rat(9)]).unwrap(), rat(1));
    }

    #[test]
    fn specialization_recovers_one_variable() {
        let q = QuiverA::alternating(5);
        let n = dims(&[2, 5, 7, 4, 2]);
        let b = b_multivariate(&q, &n).unwrap();
        for (k, idx) in enumerate_invariants(&q, &n).iter().enumerate() {
            assert_eq!(specialize(&b, k + 1).unwrap(), b_one_variable(&q, &n, idx).unwrap());
        }
    }

    #[test]
    fn connection_constants_match_fsets() {
        for (q, n) in [
            (QuiverA::equioriented(5), dims(&[2, 5, 6, 6, 2])),
            (QuiverA::alternating(5), dims(&[2, 5, 7, 4, 2])),
        ] {
            for idx in enumerate_invariants(&q, &n) {
                let fs = f_set(&exact_rank_parameter(&q, &n, &idx).unwrap());
                let d = exact_diagram(&q, &n, &idx).unwrap();
                for k in 2..=q.r() {
                    let mut got: Vec<i64> = d
                        .connections()
                        .iter()
                        .filter(|c| c.edge + 1 == k)
                        .map(|c| connection_constant(&q, &n, c))
                        .collect();
                    got.sort();
                    assert_eq!(got, fs.members(k - 2));
                }
            }
        }
    }

    #[test]
    fn a_function_examples() {
        let q = QuiverA::equioriented(5);
        let n = dims(&[2, 5, 6, 6, 2]);
        let a = a_function(&q, &n).unwrap();
        let s1 = LinearForm::new([1], 0);
        let s2 = LinearForm::new([2], 0);
        let s12 = LinearForm::new([1, 2], 0);
        // label 1 is (1,5), label 2 is (3,4)
        assert_eq!(a.per_label[0], [(s1.clone(), 6), (s12.clone(), 2)].into_iter().collect());
        assert_eq!(a.per_label[1], [(s2.clone(), 4), (s12.clone(), 2)].into_iter().collect());

        let q = QuiverA::alternating(5);
        let n = dims(&[2, 5, 7, 4, 2]);
        let a = a_function(&q, &n).unwrap();
        let at = a.at(&[2, 3]).unwrap();
        let expected: BTreeMap<LinearForm, u64> = [(s1, 8), (s2, 12), (s12, 25)].into_iter().collect();
        assert_eq!(at, expected);
        assert_eq!(a.render(), "s1^{4m1} s2^{4m2} (s1+s2)^{5m1+5m2}");
    }

    #[test]
    fn divisibility_helper() {
        let big = b1(&[1, 2, 2, 3]).linear_factors_at(&[]).unwrap();
        let small = b1(&[2, 2]).linear_factors_at(&[]).unwrap();
        assert!(divides(&small, &big));
        assert!(!divides(&big, &small));
    }

    #[test]
    fn rendering() {
        assert_eq!(LinearForm::new([1, 2], 5).render(false), "s1+s2+5");
        assert_eq!(LinearForm::new([1], 0).render(false), "s1");
        assert_eq!(LinearForm::new([], 3).render(false), "3");
        assert_eq!(FactoredBFunction::one_variable([]).render(), "1");
    }
}
