//! Inhomogeneous linear recursions over `F_q`.
//!
//! One [`IlrSpec`] covers the whole family
//!
//! ```text
//! sum_{λ=0}^{t+l-1} C(t+l-1, λ) (±1)^λ u_{i+t+l-1-λ} = (±1)^i C(i, l) c
//! ```
//!
//! where the signs are `(-1)^λ` on the left and `1` on the right for the
//! plain family, and `1` on the left and `(-1)^i` on the right for the
//! alternating family. Terms are vectors and the recursion acts on each
//! component independently.
//!
//! Every sequence of the plain family is a polynomial in the index of degree
//! below `t + 2l`; the alternating family is `(-1)^i` times such a polynomial.

use crate::error::{Error, Result};
use crate::field::{binom_mod, FieldMatrix, FieldPrime, FieldVec, Residue, Solution};

/// Parameters of one recursion instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlrSpec {
    t: usize,
    l: usize,
    alternating: bool,
    c: FieldVec,
    q: FieldPrime,
}

impl IlrSpec {
    pub fn new(t: usize, l: usize, alternating: bool, c: FieldVec, q: FieldPrime) -> Result<Self> {
        if t + l < 2 {
            return Err(Error::BadSpec(format!(
                "t + l must be at least 2 (got t={t}, l={l})"
            )));
        }
        if (l as u64) >= q.modulus() || ((t + 2 * l) as u64) >= q.modulus() {
            return Err(Error::BadSpec(format!("t={t}, l={l} too large for q={q}")));
        }
        if c.is_empty() {
            return Err(Error::BadSpec("constant vector is empty".into()));
        }
        if let Some(&bad) = c.iter().find(|&&a| !q.is_reduced(a)) {
            return Err(Error::BadSpec(format!("constant {bad} not reduced mod {q}")));
        }
        Ok(IlrSpec {
            t,
            l,
            alternating,
            c,
            q,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn alternating(&self) -> bool {
        self.alternating
    }

    pub fn constant(&self) -> &[Residue] {
        &self.c
    }

    pub fn field(&self) -> FieldPrime {
        self.q
    }

    /// Component count of every term.
    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// Number of initial terms, `t + l - 1`.
    pub fn order(&self) -> usize {
        self.t + self.l - 1
    }

    /// Number of unknown coefficients in the general term, `t + 2l`.
    pub fn unknowns(&self) -> usize {
        self.t + 2 * self.l
    }

    /// Coefficient of `u_{i+order-λ}` for `λ = 0..=order`.
    pub fn recursion_coeffs(&self) -> Vec<Residue> {
        let q = self.q;
        let top = self.order() as u64;
        (0..=top)
            .map(|lambda| {
                let b = binom_mod(top, lambda, q);
                if self.alternating {
                    b
                } else {
                    q.mul(b, q.sign(lambda))
                }
            })
            .collect()
    }

    /// Right-hand side of the recursion anchored at index `i`.
    pub fn rhs_term(&self, i: u64) -> FieldVec {
        let q = self.q;
        let mut scale = binom_mod(i, self.l as u64, q);
        if self.alternating {
            scale = q.mul(scale, q.sign(i));
        }
        self.c.iter().map(|&a| q.mul(a, scale)).collect()
    }

    /// Maps a term value to the value of the general-term polynomial at the
    /// same index. Identity for the plain family, `(-1)^index` otherwise.
    pub fn fold_sign(&self, index: u64, value: Residue) -> Residue {
        if self.alternating {
            self.q.mul(value, self.q.sign(index))
        } else {
            value
        }
    }

    fn check_dims(&self, terms: &[FieldVec]) -> bool {
        terms.iter().all(|v| v.len() == self.dim())
    }

    /// Extends `initial` (the first `order` terms) up to index `upto`.
    pub fn forward_extend(&self, initial: &[FieldVec], upto: usize) -> Result<IlrSequence> {
        let order = self.order();
        if initial.len() != order {
            return Err(Error::BadInitial {
                expected: order,
                actual: initial.len(),
            });
        }
        if !self.check_dims(initial) {
            return Err(Error::BadSpec(format!(
                "initial terms must have {} components",
                self.dim()
            )));
        }
        if upto + 1 < order {
            return Err(Error::BadSpec(format!(
                "cannot truncate to index {upto} below the {order} initial terms"
            )));
        }
        let q = self.q;
        let coeffs = self.recursion_coeffs();
        let mut terms: Vec<FieldVec> = initial
            .iter()
            .map(|v| v.iter().map(|&a| q.reduce(a)).collect())
            .collect();
        for m in order..=upto {
            let mut next = self.rhs_term((m - order) as u64);
            for (lambda, &coeff) in coeffs.iter().enumerate().skip(1) {
                let prev = &terms[m - lambda];
                for (acc, &p) in next.iter_mut().zip(prev) {
                    *acc = q.sub(*acc, q.mul(coeff, p));
                }
            }
            terms.push(next);
        }
        Ok(IlrSequence {
            spec: self.clone(),
            terms,
        })
    }

    /// Walks the recursion backwards from `window = (u_start, ..., u_{start+order-1})`,
    /// returning `u_{start-1}, u_{start-2}, ..., u_0` in that order.
    pub fn backward_recover(&self, window: &[FieldVec], start: usize) -> Result<Vec<FieldVec>> {
        let order = self.order();
        if window.len() != order {
            return Err(Error::BadWindow(format!(
                "window holds {} terms, recursion needs {order}",
                window.len()
            )));
        }
        if !self.check_dims(window) {
            return Err(Error::BadWindow(format!(
                "window terms must have {} components",
                self.dim()
            )));
        }
        let q = self.q;
        let coeffs = self.recursion_coeffs();
        let trailing_inv = q.inv(coeffs[order]).expect("trailing coefficient is ±1");
        // known[k] holds u_{m+1+k} for the index m currently being solved
        let mut known: std::collections::VecDeque<FieldVec> = window.iter().cloned().collect();
        let mut out = Vec::with_capacity(start);
        for m in (0..start).rev() {
            let mut acc = self.rhs_term(m as u64);
            for (lambda, &coeff) in coeffs.iter().enumerate().take(order) {
                let term = &known[order - 1 - lambda];
                for (a, &u) in acc.iter_mut().zip(term) {
                    *a = q.sub(*a, q.mul(coeff, u));
                }
            }
            let value: FieldVec = acc.into_iter().map(|a| q.mul(a, trailing_inv)).collect();
            known.pop_back();
            known.push_front(value.clone());
            out.push(value);
        }
        Ok(out)
    }

    /// Fits the general-term polynomial for one component from
    /// `(index, term)` samples. Returns one coefficient per sample, lowest
    /// degree first; at least `t + 2l` samples are required.
    pub fn fit_general_term(
        &self,
        samples: &[(u64, FieldVec)],
        component: usize,
    ) -> Result<Vec<Residue>> {
        if samples.len() < self.unknowns() {
            return Err(Error::BadQuorum(format!(
                "need {} samples, got {}",
                self.unknowns(),
                samples.len()
            )));
        }
        let q = self.q;
        let mut nodes = Vec::with_capacity(samples.len());
        let mut values = Vec::with_capacity(samples.len());
        for (idx, term) in samples {
            let node = q.reduce(*idx);
            if nodes.contains(&node) {
                return Err(Error::DuplicateNode(*idx));
            }
            let value = *term.get(component).ok_or(Error::DimMismatch {
                expected: component + 1,
                actual: term.len(),
            })?;
            nodes.push(node);
            values.push(self.fold_sign(*idx, q.reduce(value)));
        }
        let m = FieldMatrix::vandermonde(&nodes, nodes.len(), q);
        match crate::field::solve_linear(&m, &values, q)? {
            Solution::Unique(coeffs) => Ok(coeffs),
            Solution::Underdetermined { .. } => Err(Error::DuplicateNode(samples[0].0)),
        }
    }
}

/// A sequence generated by an [`IlrSpec`], terms indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlrSequence {
    spec: IlrSpec,
    terms: Vec<FieldVec>,
}

impl IlrSequence {
    pub fn spec(&self) -> &IlrSpec {
        &self.spec
    }

    pub fn terms(&self) -> &[FieldVec] {
        &self.terms
    }

    pub fn term(&self, index: usize) -> Option<&FieldVec> {
        self.terms.get(index)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Checks the recursion identity on every full window.
    pub fn satisfies_recursion(&self) -> bool {
        let q = self.spec.q;
        let coeffs = self.spec.recursion_coeffs();
        let order = self.spec.order();
        (0..self.terms.len().saturating_sub(order)).all(|i| {
            let rhs = self.spec.rhs_term(i as u64);
            (0..self.spec.dim()).all(|s| {
                let lhs = coeffs.iter().enumerate().fold(0, |acc, (lambda, &c)| {
                    q.add(acc, q.mul(c, self.terms[i + order - lambda][s]))
                });
                lhs == rhs[s]
            })
        })
    }
}

/// Turns an order-`k` relation `u_{i+k} + a_1 u_{i+k-1} + ... + a_k u_i = c`
/// into the homogeneous order-`k+1` relation with coefficients `b_1..b_{k+1}`.
pub fn to_homogeneous(coeffs: &[Residue], q: FieldPrime) -> Vec<Residue> {
    let k = coeffs.len();
    let mut b = Vec::with_capacity(k + 1);
    for j in 0..k {
        let prev = if j == 0 { 1 } else { coeffs[j - 1] };
        b.push(q.sub(q.reduce(coeffs[j]), q.reduce(prev)));
    }
    if let Some(&last) = coeffs.last() {
        b.push(q.neg(q.reduce(last)));
    }
    b
}
