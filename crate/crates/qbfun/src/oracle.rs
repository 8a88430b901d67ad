//! Symbolic checks of b-function and a-function identities.
//!
//! Invariants are expanded into polynomials in the matrix entries, the dual
//! invariant is read as a constant-coefficient differential operator, and
//! the operator is applied to powers of the invariants term by term. All
//! arithmetic is exact; sizes are bounded by a [`Budget`].

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::bfun::{a_function, b_multivariate, b_one_variable, FactoredBFunction, LinearForm};
use crate::error::{Error, Result};
use crate::invariant::{
    block_spec, character_exponents, difference_map_spec, enumerate_invariants, instantiate, BlockMatrixSpec,
    InvariantIndex, MatrixRep,
};
use crate::lace::{complete_diagram, diagram_to_matrices, exact_diagram};
use crate::linalg::{rat, Matrix, Rational};
use crate::poly::{integer_shift_factors, MultiPolynomial, VarTable};
use crate::quiver::{DimVector, QuiverA};

/// Environment variable read by [`Budget::from_env`].
pub const BUDGET_ENV: &str = "QBFUN_BUDGET";

/// Largest block matrix whose determinant is expanded over the `s` variables.
const MAX_OPERATOR_SIZE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Terms allowed in an expanded invariant.
    pub f_terms: usize,
    /// Terms allowed in any intermediate polynomial or state.
    pub intermediate: usize,
    /// Largest block matrix expanded over the matrix-entry variables.
    pub matrix_size: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            f_terms: 200,
            intermediate: 20_000,
            matrix_size: 6,
        }
    }
}

impl Budget {
    /// `f_terms[,intermediate[,matrix_size]]`; missing fields keep defaults.
    pub fn parse(text: &str) -> Result<Budget> {
        let mut b = Budget::default();
        let fields: Vec<&str> = text.split(',').map(str::trim).collect();
        if fields.len() > 3 || fields.iter().any(|f| f.is_empty()) {
            return Err(Error::Parse(format!("bad budget '{text}'")));
        }
        let parse = |f: &str| {
            f.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad budget field '{f}'")))
        };
        b.f_terms = parse(fields[0])?;
        if let Some(f) = fields.get(1) {
            b.intermediate = parse(f)?;
        }
        if let Some(f) = fields.get(2) {
            b.matrix_size = parse(f)?;
        }
        Ok(b)
    }

    pub fn from_env() -> Result<Budget> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => Budget::parse(&v),
            Err(_) => Ok(Budget::default()),
        }
    }

    fn check(&self, what: &'static str, size: usize, limit: usize) -> Result<()> {
        if size > limit {
            Err(Error::Budget { what, size, limit })
        } else {
            Ok(())
        }
    }
}

/// Variable table for a quiver: the entries of every edge matrix first,
/// then the parameters `s` (one label) or `s1..sl`.
#[derive(Debug, Clone)]
pub struct OracleVars {
    pub table: VarTable,
    edges: Vec<Vec<usize>>,
    shapes: Vec<(usize, usize)>,
    pub s: Vec<usize>,
}

impl OracleVars {
    pub fn new(quiver: &QuiverA, n: &DimVector, params: usize) -> OracleVars {
        let names: Vec<String> = match params {
            1 => vec!["s".into()],
            l => (1..=l).map(|k| format!("s{k}")).collect(),
        };
        OracleVars::with_params(quiver, n, &names)
    }

    /// Parameters always named `s1..sl`, even for one label.
    pub fn labelled(quiver: &QuiverA, n: &DimVector, labels: usize) -> OracleVars {
        let names: Vec<String> = (1..=labels).map(|k| format!("s{k}")).collect();
        OracleVars::with_params(quiver, n, &names)
    }

    fn with_params(quiver: &QuiverA, n: &DimVector, names: &[String]) -> OracleVars {
        let mut table = VarTable::new();
        let mut edges = Vec::new();
        let mut shapes = Vec::new();
        for a in 1..quiver.r() {
            let (h, t) = (n.at(quiver.head(a)), n.at(quiver.tail(a)));
            let mut ids = Vec::with_capacity(h * t);
            for i in 1..=h {
                for j in 1..=t {
                    ids.push(table.intern(&format!("x{a}_{i}_{j}")));
                }
            }
            edges.push(ids);
            shapes.push((h, t));
        }
        let s = names.iter().map(|name| table.intern(name)).collect();
        OracleVars {
            table,
            edges,
            shapes,
            s,
        }
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    /// Entry `(i, j)` (0-based) of the matrix on edge `a`.
    pub fn x(&self, a: usize, i: usize, j: usize) -> usize {
        self.edges[a - 1][i * self.shapes[a - 1].1 + j]
    }

    pub fn x_vars(&self) -> Vec<usize> {
        self.edges.iter().flatten().copied().collect()
    }

    /// Polynomial of a linear form in the parameters.
    pub fn form(&self, form: &LinearForm) -> MultiPolynomial {
        let nv = self.nvars();
        let mut p = MultiPolynomial::constant(nv, rat(form.constant));
        for (&l, &c) in &form.coeffs {
            p.add_scaled(&MultiPolynomial::var(nv, self.s[l - 1]), &rat(i64::from(c)), None);
        }
        p
    }

    /// Product of linear forms raised to the given exponents.
    pub fn form_product<'a>(&self, forms: impl IntoIterator<Item = (&'a LinearForm, u64)>) -> MultiPolynomial {
        let mut acc = MultiPolynomial::one(self.nvars());
        for (f, e) in forms {
            let p = self.form(f);
            for _ in 0..e {
                acc = acc.mul(&p);
            }
        }
        acc
    }

    pub fn render(&self, p: &MultiPolynomial) -> String {
        p.render(&self.table)
    }
}

#[derive(Debug, Clone)]
struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MultiPolynomial>,
}

impl PolyMatrix {
    fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPolynomial) -> PolyMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    fn identity(n: usize, nvars: usize) -> PolyMatrix {
        PolyMatrix::from_fn(n, n, |i, j| {
            if i == j {
                MultiPolynomial::one(nvars)
            } else {
                MultiPolynomial::zero(nvars)
            }
        })
    }

    fn get(&self, i: usize, j: usize) -> &MultiPolynomial {
        &self.data[i * self.cols + j]
    }

    fn mul(&self, other: &PolyMatrix, nvars: usize) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = MultiPolynomial::zero(nvars);
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc.add_assign(&a.mul(b));
                }
            }
            acc
        })
    }

    /// Laplace expansion along the rows, memoized on the set of used columns.
    fn det(&self, nvars: usize, budget: &Budget) -> Result<MultiPolynomial> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut layer: BTreeMap<u32, MultiPolynomial> = BTreeMap::new();
        layer.insert(0, MultiPolynomial::one(nvars));
        for row in 0..n {
            let mut next: BTreeMap<u32, MultiPolynomial> = BTreeMap::new();
            for (&mask, acc) in &layer {
                for c in 0..n {
                    let bit = 1u32 << c;
                    let entry = self.get(row, c);
                    if mask & bit != 0 || entry.is_zero() {
                        continue;
                    }
                    let above = (mask >> (c + 1)).count_ones();
                    let mut term = acc.mul(entry);
                    if above % 2 == 1 {
                        term = term.scale(&rat(-1));
                    }
                    let slot = next
                        .entry(mask | bit)
                        .or_insert_with(|| MultiPolynomial::zero(nvars));
                    slot.add_assign(&term);
                    budget.check("determinant expansion terms", slot.len(), budget.intermediate)?;
                }
            }
            next.retain(|_, p| !p.is_zero());
            layer = next;
        }
        Ok(layer
            .remove(&(((1u64 << n) - 1) as u32))
            .unwrap_or_else(|| MultiPolynomial::zero(nvars)))
    }
}

fn symbolic_det(
    spec: &BlockMatrixSpec,
    n: &DimVector,
    mats: &[PolyMatrix],
    nvars: usize,
    size_limit: usize,
    budget: &Budget,
) -> Result<MultiPolynomial> {
    let size = spec.row_dim(n);
    budget.check("invariant matrix size", size, size_limit)?;
    let row_sizes: Vec<usize> = spec.row_blocks.iter().map(|&v| n.at(v)).collect();
    let col_sizes: Vec<usize> = spec.col_blocks.iter().map(|&v| n.at(v)).collect();
    let mut full = PolyMatrix::from_fn(size, spec.col_dim(n), |_, _| MultiPolynomial::zero(nvars));
    let mut ro = 0;
    for (r, row) in spec.entries.iter().enumerate() {
        let mut co = 0;
        for (c, entry) in row.iter().enumerate() {
            if let Some(path) = entry {
                let mut acc = PolyMatrix::identity(n.at(path.from), nvars);
                for &a in &path.edges {
                    acc = mats[a - 1].mul(&acc, nvars);
                }
                for i in 0..row_sizes[r] {
                    for j in 0..col_sizes[c] {
                        full.data[(ro + i) * full.cols + co + j] = acc.get(i, j).clone();
                    }
                }
            }
            co += col_sizes[c];
        }
        ro += row_sizes[r];
    }
    full.det(nvars, budget)
}

/// The invariant as a polynomial in the entries of the edge matrices.
pub fn expand_invariant(
    quiver: &QuiverA,
    n: &DimVector,
    idx: &InvariantIndex,
    vars: &OracleVars,
    budget: &Budget,
) -> Result<MultiPolynomial> {
    let spec = block_spec(quiver, n, idx)?;
    let nv = vars.nvars();
    let mats: Vec<PolyMatrix> = (1..quiver.r())
        .map(|a| {
            let (h, t) = vars.shapes[a - 1];
            PolyMatrix::from_fn(h, t, |i, j| MultiPolynomial::var(nv, vars.x(a, i, j)))
        })
        .collect();
    let f = symbolic_det(&spec, n, &mats, nv, budget.matrix_size, budget)?;
    budget.check("invariant terms", f.len(), budget.f_terms)?;
    Ok(f)
}

/// Matrices of the dual quiver built from `entry(a, i, j)`, the value paired
/// with entry `(i, j)` of the primal matrix on edge `a`.
fn dual_matrices(
    vars: &OracleVars,
    mut entry: impl FnMut(usize, usize, usize) -> MultiPolynomial,
) -> Vec<PolyMatrix> {
    (1..=vars.shapes.len())
        .map(|a| {
            let (h, t) = vars.shapes[a - 1];
            PolyMatrix::from_fn(t, h, |k, l| entry(a, l, k))
        })
        .collect()
}

fn check_dual_character(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<()> {
    let primal = character_exponents(quiver, n, idx)?;
    let dual = character_exponents(&quiver.dual(), n, idx)?;
    if primal.iter().zip(&dual).any(|(a, b)| a + b != 0) {
        return Err(Error::IdentityFailed(format!(
            "dual invariant ({},{}) has character {dual:?}, not the inverse of {primal:?}",
            idx.p, idx.q
        )));
    }
    Ok(())
}

/// The invariant with the same index on the reversed quiver, written in the
/// primal variables through the trace pairing: the dual entry `(j, i)` on
/// edge `a` is the variable of primal entry `(i, j)`.
pub fn dual_invariant(
    quiver: &QuiverA,
    n: &DimVector,
    idx: &InvariantIndex,
    vars: &OracleVars,
    budget: &Budget,
) -> Result<MultiPolynomial> {
    let dual = quiver.dual();
    check_dual_character(quiver, n, idx)?;
    let spec = difference_map_spec(&dual, idx.p, idx.q);
    let nv = vars.nvars();
    let mats = dual_matrices(vars, |a, i, j| MultiPolynomial::var(nv, vars.x(a, i, j)));
    let f = symbolic_det(&spec, n, &mats, nv, budget.matrix_size, budget)?;
    budget.check("invariant terms", f.len(), budget.f_terms)?;
    Ok(f)
}

/// `sum_k P_k * prod_i f_i^{base_i - k_i}` with shifts `k` in `terms`.
#[derive(Debug, Clone, PartialEq)]
pub struct NagataState {
    pub terms: BTreeMap<Vec<u16>, MultiPolynomial>,
    pub bases: Vec<MultiPolynomial>,
}

impl NagataState {
    pub fn new(bases: Vec<MultiPolynomial>) -> NagataState {
        let nv = bases[0].nvars();
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; bases.len()], MultiPolynomial::one(nv));
        NagataState { terms, bases }
    }

    pub fn term_count(&self) -> usize {
        self.terms.values().map(MultiPolynomial::len).sum()
    }

    /// Derivative in `var`; `df[i]` is the derivative of `f_i` in `var`.
    fn derive(&self, var: usize, df: &[MultiPolynomial]) -> NagataState {
        let nv = self.bases[0].nvars();
        let mut out: BTreeMap<Vec<u16>, MultiPolynomial> = BTreeMap::new();
        for (k, p) in &self.terms {
            let dp = p.derivative(var);
            if !dp.is_zero() {
                out.entry(k.clone())
                    .or_insert_with(|| MultiPolynomial::zero(nv))
                    .add_assign(&dp);
            }
            for (i, d) in df.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let coeff = self.bases[i].sub(&MultiPolynomial::constant(nv, rat(i64::from(k[i]))));
                let mut shifted = k.clone();
                shifted[i] += 1;
                out.entry(shifted)
                    .or_insert_with(|| MultiPolynomial::zero(nv))
                    .add_assign(&coeff.mul(p).mul(d));
            }
        }
        out.retain(|_, p| !p.is_zero());
        NagataState {
            terms: out,
            bases: self.bases.clone(),
        }
    }
}

/// Applies `op(d/dx)` to `state`. Derivative sequences are walked in sorted
/// order so shared prefixes are differentiated once.
fn apply_operator(
    op: &MultiPolynomial,
    state: NagataState,
    fs: &[MultiPolynomial],
    budget: &Budget,
) -> Result<NagataState> {
    let nv = op.nvars();
    let mut derivs: BTreeMap<usize, Vec<MultiPolynomial>> = BTreeMap::new();
    let mut sequences: Vec<(Vec<usize>, Rational)> = op
        .terms()
        .map(|(e, c)| {
            let seq = e
                .iter()
                .enumerate()
                .flat_map(|(v, &k)| std::iter::repeat_n(v, usize::from(k)))
                .collect();
            (seq, c.clone())
        })
        .collect();
    sequences.sort();
    let mut total: BTreeMap<Vec<u16>, MultiPolynomial> = BTreeMap::new();
    let mut stack: Vec<NagataState> = vec![state.clone()];
    let mut prev: Vec<usize> = Vec::new();
    for (seq, c) in sequences {
        let common = prev.iter().zip(&seq).take_while(|(a, b)| a == b).count();
        stack.truncate(common + 1);
        for &v in &seq[common..] {
            let df = derivs
                .entry(v)
                .or_insert_with(|| fs.iter().map(|f| f.derivative(v)).collect());
            let next = stack.last().expect("nonempty stack").derive(v, df);
            budget.check("operator state terms", next.term_count(), budget.intermediate)?;
            stack.push(next);
        }
        for (k, p) in &stack.last().expect("nonempty stack").terms {
            total
                .entry(k.clone())
                .or_insert_with(|| MultiPolynomial::zero(nv))
                .add_scaled(p, &c, None);
        }
        prev = seq;
    }
    total.retain(|_, p| !p.is_zero());
    Ok(NagataState {
        terms: total,
        bases: state.bases,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinOutcome {
    /// Monic b-function.
    pub b: FactoredBFunction,
    /// Leading coefficient of the raw identity, divided out of `b`.
    pub constant: Rational,
}

/// Applies `fstar(d/dx)` to `f^{s+1}` and extracts `b(s)` from
/// `fstar(d/dx) f^{s+1} = b(s) f^s`.
pub fn apply_bernstein(
    fstar: &MultiPolynomial,
    f: &MultiPolynomial,
    s_var: usize,
    budget: &Budget,
) -> Result<BernsteinOutcome> {
    if fstar.total_degree() != f.total_degree() {
        return Err(Error::Shape(format!(
            "operator degree {} differs from invariant degree {}",
            fstar.total_degree(),
            f.total_degree()
        )));
    }
    let nv = f.nvars();
    let base = MultiPolynomial::var(nv, s_var).add(&MultiPolynomial::one(nv));
    let state = apply_operator(fstar, NagataState::new(vec![base]), std::slice::from_ref(f), budget)?;
    let top = state.terms.keys().map(|k| k[0]).max().unwrap_or(0);
    let mut by_shift: Vec<MultiPolynomial> = vec![MultiPolynomial::zero(nv); usize::from(top) + 1];
    for (k, p) in state.terms {
        by_shift[usize::from(k[0])] = p;
    }
    // sum_k P_k f^{s+1-k} = b f^s forces P_top to be divisible by f, and so on down.
    for k in (2..by_shift.len()).rev() {
        let (q, r) = by_shift[k].div_rem(f);
        if !r.is_zero() {
            return Err(Error::IdentityFailed(format!(
                "coefficient of shift {k} is not divisible by the invariant"
            )));
        }
        by_shift[k - 1].add_assign(&q);
    }
    let mut b = by_shift.get(1).cloned().unwrap_or_else(|| MultiPolynomial::zero(nv));
    b.add_assign(&by_shift[0].mul(f));
    let coeffs = b
        .univariate(s_var)
        .ok_or_else(|| Error::IdentityFailed("b depends on the matrix entries".into()))?;
    let constant = coeffs.last().cloned().unwrap_or_else(Rational::zero);
    if constant.is_zero() {
        return Err(Error::IdentityFailed("b vanishes identically".into()));
    }
    let monic: Vec<Rational> = coeffs.iter().map(|c| c / &constant).collect();
    let bound = 4 * (monic.len() as i64) + 64;
    let (shifts, rest) = integer_shift_factors(&monic, bound);
    if rest.len() > 1 {
        return Err(Error::NonLinearFactor(format!("{rest:?}")));
    }
    Ok(BernsteinOutcome {
        b: FactoredBFunction::one_variable(shifts),
        constant,
    })
}

#[derive(Debug, Clone)]
pub struct OneVariableCheck {
    pub oracle: BernsteinOutcome,
    pub engine: FactoredBFunction,
    pub matches: bool,
}

/// Oracle b-function of one invariant against the closed formula.
pub fn verify_one_variable(
    quiver: &QuiverA,
    n: &DimVector,
    idx: &InvariantIndex,
    budget: &Budget,
) -> Result<OneVariableCheck> {
    let vars = OracleVars::new(quiver, n, 1);
    let f = expand_invariant(quiver, n, idx, &vars, budget)?;
    let fstar = dual_invariant(quiver, n, idx, &vars, budget)?;
    let oracle = apply_bernstein(&fstar, &f, vars.s[0], budget)?;
    let engine = b_one_variable(quiver, n, idx)?;
    let matches = oracle.b.root_shifts() == engine.root_shifts();
    Ok(OneVariableCheck { oracle, engine, matches })
}

#[derive(Debug, Clone)]
pub struct MultiCheck {
    pub vars: OracleVars,
    /// `b_m(s)` from the identity, scaled so its leading term has coefficient 1.
    pub oracle: MultiPolynomial,
    /// Bracket product of the closed formula at `m`.
    pub engine: MultiPolynomial,
    pub constant: Rational,
    pub matches: bool,
}

/// Checks `prod f_i*(d/dx)^{m_i} prod f_i^{s_i+m_i} = b_m(s) prod f_i^{s_i}`
/// for all fundamental invariants, labelled in sorted order.
pub fn apply_bernstein_multi(quiver: &QuiverA, n: &DimVector, m: &[u64], budget: &Budget) -> Result<MultiCheck> {
    let invariants = enumerate_invariants(quiver, n);
    if m.len() != invariants.len() {
        return Err(Error::LengthMismatch {
            expected: invariants.len(),
            got: m.len(),
        });
    }
    let vars = OracleVars::labelled(quiver, n, invariants.len());
    let nv = vars.nvars();
    let mut fs = Vec::new();
    let mut op = MultiPolynomial::one(nv);
    for (idx, &mi) in invariants.iter().zip(m) {
        fs.push(expand_invariant(quiver, n, idx, &vars, budget)?);
        let fstar = dual_invariant(quiver, n, idx, &vars, budget)?;
        for _ in 0..mi {
            op = op.mul(&fstar);
            budget.check("operator terms", op.len(), budget.intermediate)?;
        }
    }
    let bases: Vec<MultiPolynomial> = (0..invariants.len())
        .map(|i| MultiPolynomial::var(nv, vars.s[i]).add(&MultiPolynomial::constant(nv, rat(m[i] as i64))))
        .collect();
    let state = apply_operator(&op, NagataState::new(bases), &fs, budget)?;

    let mut top: Vec<u16> = m.iter().map(|&x| x as u16).collect();
    for k in state.terms.keys() {
        for (t, &ki) in top.iter_mut().zip(k) {
            *t = (*t).max(ki);
        }
    }
    let mut powers: Vec<Vec<MultiPolynomial>> = Vec::new();
    for (f, &t) in fs.iter().zip(&top) {
        let mut row = vec![MultiPolynomial::one(nv)];
        for e in 1..=usize::from(t) {
            let next = row[e - 1].mul(f);
            budget.check("power terms", next.len(), budget.intermediate)?;
            row.push(next);
        }
        powers.push(row);
    }
    let mut lhs = MultiPolynomial::zero(nv);
    for (k, p) in &state.terms {
        let mut term = p.clone();
        for (i, &ki) in k.iter().enumerate() {
            term = term.mul(&powers[i][usize::from(top[i] - ki)]);
        }
        lhs.add_assign(&term);
        budget.check("identity terms", lhs.len(), budget.intermediate)?;
    }
    let mut divisor = MultiPolynomial::one(nv);
    for (i, &mi) in m.iter().enumerate() {
        divisor = divisor.mul(&powers[i][usize::from(top[i]) - mi as usize]);
    }
    let (b, r) = lhs.div_rem(&divisor);
    if !r.is_zero() || b.is_zero() || !b.only_uses(&vars.s) {
        return Err(Error::IdentityFailed(format!("b-function identity fails at m={m:?}")));
    }
    let constant = b.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::one);
    let oracle = b.scale(&(Rational::one() / &constant));
    let engine_b = b_multivariate(quiver, n)?;
    let engine = vars.form_product(engine_b.linear_factors_at(m)?.iter().map(|(f, &e)| (f, e)));
    let matches = oracle == engine;
    Ok(MultiCheck {
        vars,
        oracle,
        engine,
        constant,
        matches,
    })
}

/// `d log f` at `at`, one matrix per edge shaped like the edge matrix:
/// entry `(i, j)` is the derivative in entry `(i, j)` divided by `f(at)`.
/// Uses `d log det Y = tr(Y^{-1} dY)`.
pub fn grad_log(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex, at: &MatrixRep) -> Result<MatrixRep> {
    let spec = block_spec(quiver, n, idx)?;
    let y = instantiate(&spec, n, at)?;
    let inv = y
        .inverse()
        .ok_or_else(|| Error::IdentityFailed(format!("invariant ({},{}) vanishes at the base point", idx.p, idx.q)))?;
    let mut grads: Vec<Matrix> = at.maps.iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
    let mut ro = 0;
    for (r, row) in spec.entries.iter().enumerate() {
        let sink = spec.row_blocks[r];
        let mut co = 0;
        for (c, entry) in row.iter().enumerate() {
            let source = spec.col_blocks[c];
            if let Some(path) = entry {
                let w = Matrix::from_fn(n.at(source), n.at(sink), |i, j| inv.get(co + i, ro + j).clone());
                for (pos, &a) in path.edges.iter().enumerate() {
                    let mut before = Matrix::identity(n.at(source));
                    for &e in &path.edges[..pos] {
                        before = at.edge(e).mul(&before)?;
                    }
                    let mut after = Matrix::identity(n.at(quiver.head(a)));
                    for &e in &path.edges[pos + 1..] {
                        after = at.edge(e).mul(&after)?;
                    }
                    let contrib = before.mul(&w)?.mul(&after)?.transpose();
                    grads[a - 1] = grads[a - 1].add(&contrib)?;
                }
            }
            co += n.at(source);
        }
        ro += n.at(sink);
    }
    Ok(MatrixRep { maps: grads })
}

#[derive(Debug, Clone)]
pub struct GradLogCheck {
    pub gradient: MatrixRep,
    pub expected: MatrixRep,
    pub matches: bool,
}

/// Gradient of `log f` at the complete-diagram point against the matrices
/// of the exact diagram.
pub fn grad_log_check(quiver: &QuiverA, n: &DimVector, idx: &InvariantIndex) -> Result<GradLogCheck> {
    let base = diagram_to_matrices(quiver, n, &complete_diagram(quiver, n)?)?;
    let gradient = grad_log(quiver, n, idx, &base)?;
    let expected = diagram_to_matrices(quiver, n, &exact_diagram(quiver, n, idx)?)?;
    let matches = gradient == expected;
    Ok(GradLogCheck {
        gradient,
        expected,
        matches,
    })
}

#[derive(Debug, Clone)]
pub struct AFunctionLabelCheck {
    /// `f_i(A0) * f_i*(grad log f^s(A0))`, scaled to leading coefficient 1.
    pub oracle: MultiPolynomial,
    pub engine: MultiPolynomial,
    pub constant: Rational,
    pub matches: bool,
}

#[derive(Debug, Clone)]
pub struct AFunctionCheck {
    pub vars: OracleVars,
    pub labels: Vec<AFunctionLabelCheck>,
}

impl AFunctionCheck {
    pub fn matches(&self) -> bool {
        self.labels.iter().all(|l| l.matches)
    }
}

pub fn a_function_check(quiver: &QuiverA, n: &DimVector, budget: &Budget) -> Result<AFunctionCheck> {
    let invariants = enumerate_invariants(quiver, n);
    let vars = OracleVars::labelled(quiver, n, invariants.len());
    let nv = vars.nvars();
    let base = diagram_to_matrices(quiver, n, &complete_diagram(quiver, n)?)?;
    let grads = invariants
        .iter()
        .map(|idx| grad_log(quiver, n, idx, &base))
        .collect::<Result<Vec<_>>>()?;
    let combined = |a: usize, i: usize, j: usize| {
        let mut p = MultiPolynomial::zero(nv);
        for (k, g) in grads.iter().enumerate() {
            p.add_scaled(&MultiPolynomial::var(nv, vars.s[k]), g.edge(a).get(i, j), None);
        }
        p
    };
    let mats = dual_matrices(&vars, combined);
    let engine_a = a_function(quiver, n)?;
    let dual = quiver.dual();
    let mut labels = Vec::new();
    for (k, idx) in invariants.iter().enumerate() {
        check_dual_character(quiver, n, idx)?;
        let spec = difference_map_spec(&dual, idx.p, idx.q);
        let fstar = symbolic_det(&spec, n, &mats, nv, MAX_OPERATOR_SIZE, budget)?;
        let f0 = instantiate(&difference_map_spec(quiver, idx.p, idx.q), n, &base)?.det()?;
        let raw = fstar.scale(&f0);
        let constant = raw.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero);
        let oracle = if constant.is_zero() {
            raw
        } else {
            raw.scale(&(Rational::one() / &constant))
        };
        let engine = vars.form_product(engine_a.per_label[k].iter().map(|(f, &e)| (f, u64::from(e))));
        let matches = !constant.is_zero() && oracle == engine;
        labels.push(AFunctionLabelCheck {
            oracle,
            engine,
            constant,
            matches,
        });
    }
    Ok(AFunctionCheck { vars, labels })
}
