//! Sparse multivariate polynomials over the rationals.
//!
//! Exponent vectors are dense over an interned variable table and compared
//! lexicographically, so the first variables of the table dominate the
//! term order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{rat, Rational};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl VarTable {
    pub fn new() -> VarTable {
        VarTable::default()
    }

    /// Index of `name`, adding it when new.
    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.lookup.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.lookup.insert(name.to_string(), i);
        i
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

pub type Exponents = Vec<u16>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPolynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MultiPolynomial {
    pub fn zero(nvars: usize) -> Self {
        MultiPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = MultiPolynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPolynomial::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPolynomial::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let nvars = exps.len();
        let mut p = MultiPolynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u16]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest term in the lexicographic order.
    pub fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| u32::from(x)).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// True when no variable outside `allowed` occurs.
    pub fn only_uses(&self, allowed: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().enumerate().all(|(i, &x)| x == 0 || allowed.contains(&i)))
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &MultiPolynomial) {
        debug_assert_eq!(self.nvars, other.nvars);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    /// `self += c * x^shift * other`.
    pub fn add_scaled(&mut self, other: &MultiPolynomial, c: &Rational, shift: Option<&[u16]>) {
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            let exps = match shift {
                Some(s) => e.iter().zip(s).map(|(a, b)| a + b).collect(),
                None => e.clone(),
            };
            self.add_term(exps, v * c);
        }
    }

    pub fn add(&self, other: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        out.add_scaled(other, &rat(-1), None);
        out
    }

    pub fn scale(&self, c: &Rational) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero(self.nvars);
        out.add_scaled(self, c, None);
        out
    }

    pub fn mul(&self, other: &MultiPolynomial) -> MultiPolynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = MultiPolynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_scaled(other, c, Some(e));
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPolynomial {
        let mut acc = MultiPolynomial::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * rat(i64::from(e[i])));
            }
        }
        out
    }

    /// Quotient and remainder of division by `g` in the lexicographic
    /// order. For a single divisor the remainder is zero exactly when `g`
    /// divides `self`.
    pub fn div_rem(&self, g: &MultiPolynomial) -> (MultiPolynomial, MultiPolynomial) {
        let (lg, lc) = g.leading().expect("division by zero polynomial");
        let (lg, lc) = (lg.clone(), lc.clone());
        let mut p = self.clone();
        let mut quo = MultiPolynomial::zero(self.nvars);
        let mut rem = MultiPolynomial::zero(self.nvars);
        while let Some((e, c)) = p.leading() {
            let (e, c) = (e.clone(), c.clone());
            if divides(&lg, &e) {
                let shift: Exponents = e.iter().zip(&lg).map(|(a, b)| a - b).collect();
                let coef = &c / &lc;
                quo.add_term(shift.clone(), coef.clone());
                p.add_scaled(g, &-coef, Some(&shift));
            } else {
                p.terms.remove(&e);
                rem.add_term(e, c);
            }
        }
        (quo, rem)
    }

    /// Substitutes constants for the variables given as `Some`.
    pub fn substitute(&self, values: &[Option<Rational>]) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut coef = c.clone();
            let mut exps = e.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if exps[i] > 0 {
                        coef *= num_traits::pow(v.clone(), usize::from(exps[i]));
                        exps[i] = 0;
                    }
                }
            }
            out.add_term(exps, coef);
        }
        out
    }

    /// Coefficients `c_0, c_1, ...` when only variable `i` occurs.
    pub fn univariate(&self, i: usize) -> Option<Vec<Rational>> {
        if !self.only_uses(&[i]) {
            return None;
        }
        let deg = usize::from(self.degree_in(i));
        let mut out = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            out[usize::from(e[i])] = c.clone();
        }
        Some(out)
    }

    pub fn render(&self, vars: &VarTable) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        vars.name(i).to_string()
                    } else {
                        format!("{}^{x}", vars.name(i))
                    }
                })
                .collect();
            let coef = if mono.is_empty() || !c.is_one() {
                format!("{c}")
            } else {
                String::new()
            };
            let body = [coef, mono.join("*")]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            parts.push(body);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut vars = VarTable::new();
        for i in 0..self.nvars {
            vars.intern(&format!("v{i}"));
        }
        f.write_str(&self.render(&vars))
    }
}

/// Splits a monic univariate polynomial into factors `(s + c)` with
/// integer `c` in `0..=bound`; returns the shifts and whatever is left.
pub fn integer_shift_factors(coeffs: &[Rational], bound: i64) -> (Vec<i64>, Vec<Rational>) {
    let mut p: Vec<Rational> = coeffs.to_vec();
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut shifts = Vec::new();
    'outer: while p.len() > 1 {
        for c in 0..=bound {
            // evaluate at s = -c
            let root = rat(-c);
            let mut acc = Rational::zero();
            for coef in p.iter().rev() {
                acc = acc * &root + coef;
            }
            if acc.is_zero() {
                // synthetic division by (s + c)
                let deg = p.len() - 1;
                let mut q = vec![Rational::zero(); deg];
                let mut carry = Rational::zero();
                for k in (0..deg).rev() {
                    carry = &p[k + 1] + &carry * &root;
                    q[k] = carry.clone();
                }
                p = q;
                shifts.push(c);
                continue 'outer;
            }
        }
        break;
    }
    (shifts, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPolynomial {
        MultiPolynomial::var(n, i)
    }

    #[test]
    fn arithmetic() {
        let a = x(2, 0).add(&x(2, 1));
        let sq = a.mul(&a);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coefficient(&[1, 1]), rat(2));
        assert!(sq.sub(&a.pow(2)).is_zero());
        assert_eq!(sq.total_degree(), 2);
        assert_eq!(sq.derivative(0), x(2, 0).scale(&rat(2)).add(&x(2, 1).scale(&rat(2))));
    }

    #[test]
    fn exact_division() {
        let a = x(3, 0).mul(&x(3, 1)).sub(&x(3, 2));
        let b = x(3, 0).add(&MultiPolynomial::constant(3, rat(3)));
        let prod = a.mul(&b);
        let (q, r) = prod.div_rem(&a);
        assert!(r.is_zero());
        assert_eq!(q, b);
        let (_, r) = prod.add(&x(3, 1)).div_rem(&a);
        assert!(!r.is_zero());
    }

    #[test]
    fn substitution_and_univariate() {
        let p = x(2, 0).mul(&x(2, 1)).add(&x(2, 1));
        let q = p.substitute(&[Some(rat(2)), None]);
        assert_eq!(q, x(2, 1).scale(&rat(3)));
        assert_eq!(q.univariate(1).unwrap(), vec![rat(0), rat(3)]);
        assert!(p.univariate(1).is_none());
    }

    #[test]
    fn shift_factors() {
        // (s+1)(s+2)^2 = s^3 + 5s^2 + 8s + 4
        let (shifts, rest) = integer_shift_factors(&[rat(4), rat(8), rat(5), rat(1)], 10);
        assert_eq!(shifts, vec![1, 2, 2]);
        assert_eq!(rest, vec![rat(1)]);
        // s^2 + 1 does not split
        let (shifts, rest) = integer_shift_factors(&[rat(1), rat(0), rat(1)], 10);
        assert!(shifts.is_empty());
        assert_eq!(rest.len(), 3);
    }

    #[test]
    fn interning() {
        let mut v = VarTable::new();
        assert_eq!(v.intern("a"), 0);
        assert_eq!(v.intern("b"), 1);
        assert_eq!(v.intern("a"), 0);
        assert_eq!(v.get("b"), Some(1));
        let p = x(2, 0).scale(&rat(3)).add(&MultiPolynomial::one(2));
        assert_eq!(p.render(&v), "3*a + 1");
    }
}
