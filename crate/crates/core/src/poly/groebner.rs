//! Buchberger's algorithm in the graded lexicographic order.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::{Monomial, MultiPoly};

/// Remainder of `f` after full reduction by `basis`.
pub fn normal_form(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let mut p = f.clone();
    let mut r = MultiPoly::zero(f.nvars());
    'outer: while let Some((m, c)) = p.leading_term().map(|(m, c)| (*m, c.clone())) {
        for g in basis {
            let (lm, lc) = g.leading_term().expect("nonzero basis element");
            if let Some(q) = m.div(lm) {
                p = &p - &g.mul_monomial(&q, &(&c / lc));
                continue 'outer;
            }
        }
        p.pop_leading();
        r.add_term(m, c);
    }
    r
}

fn lm(p: &MultiPoly) -> Monomial {
    *p.leading_term().expect("nonzero").0
}

fn s_poly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_monomial(&l.div(mf).unwrap(), &cg.clone());
    let b = g.mul_monomial(&l.div(mg).unwrap(), &cf.clone());
    &a - &b
}

/// Reduced Groebner basis with primitive elements, or `None` once more than
/// `max_pairs` critical pairs have been reduced.
pub fn groebner_basis(polys: &[MultiPoly], max_pairs: usize) -> Option<Vec<MultiPoly>> {
    let mut g: Vec<MultiPoly> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut inputs: Vec<MultiPoly> = polys.iter().filter(|p| !p.is_zero()).map(MultiPoly::primitive).collect();
    inputs.sort_by_key(lm);
    let push = |g: &mut Vec<MultiPoly>, pairs: &mut BTreeSet<(u32, usize, usize)>, p: MultiPoly| {
        let j = g.len();
        for (i, h) in g.iter().enumerate() {
            pairs.insert((lm(h).lcm(&lm(&p)).degree(), i, j));
        }
        g.push(p);
    };
    for p in inputs {
        let r = normal_form(&p, &g);
        if !r.is_zero() {
            push(&mut g, &mut pairs, r.primitive());
        }
    }
    let mut reduced = 0;
    while let Some(pair) = pairs.pop_first() {
        let (_, i, j) = pair;
        done.insert((i, j));
        let (li, lj) = (lm(&g[i]), lm(&g[j]));
        if li.is_coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        let chain = (0..g.len()).any(|k| {
            k != i && k != j && lm(&g[k]).divides(&l) && done.contains(&(i.min(k), i.max(k))) && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        reduced += 1;
        if reduced > max_pairs {
            return None;
        }
        let r = normal_form(&s_poly(&g[i], &g[j]), &g);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Some(vec![MultiPoly::one(polys[0].nvars())]);
        }
        push(&mut g, &mut pairs, r.primitive());
    }
    Some(interreduce(g))
}

fn interreduce(g: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let mut minimal: Vec<MultiPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let m = lm(p);
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let n = lm(q);
            j != i && n.divides(&m) && (n != m || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        let (m, c) = minimal[i].leading_term().map(|(m, c)| (*m, c.clone())).unwrap();
        let mut tail = minimal[i].clone();
        tail.pop_leading();
        let mut p = normal_form(&tail, &others);
        p.add_term(m, c);
        out.push(p.primitive());
    }
    out.sort_by_key(lm);
    out
}

/// Whether the ideal spanned by a Groebner basis in the first `nvars`
/// variables has finitely many zeros: every variable needs a pure power
/// among the leading monomials.
pub fn is_zero_dimensional(basis: &[MultiPoly], nvars: usize) -> bool {
    (0..nvars).all(|v| {
        basis.iter().any(|p| {
            let m = lm(p);
            m.exp(v) > 0 && m.degree() == u32::from(m.exp(v))
        })
    })
}

/// True when the basis is `{1}`.
pub fn is_unit_ideal(basis: &[MultiPoly]) -> bool {
    basis.iter().any(|p| p.is_constant() && !p.constant_term().is_zero())
}
