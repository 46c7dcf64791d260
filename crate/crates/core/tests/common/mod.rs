//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use grtkit::braid::BraidAlgebra;
use grtkit::ncseries::Word;
use grtkit::scalar::{rat, Rational};
use num_traits::Zero;

type Vector = BTreeMap<usize, Rational>;

/// Defining relations of `a_n` as integer combinations of degree-2 words.
pub fn relations(alg: &BraidAlgebra) -> Vec<Vec<(Word, i64)>> {
    let n = alg.strands();
    let g = |i: usize, j: usize| alg.gen(i, j).unwrap();
    let comm = |a: u8, b: u8| vec![(Word::from_letters(&[a, b]), 1), (Word::from_letters(&[b, a]), -1)];
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || j == k || i == k || i > j {
                    continue;
                }
                // [t_ij, t_ik + t_jk]
                let mut r = comm(g(i, j), g(i, k));
                r.extend(comm(g(i, j), g(j, k)));
                out.push(r);
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=n {
                for l in k + 1..=n {
                    if [k, l].iter().all(|x| *x != i && *x != j) {
                        out.push(comm(g(i, j), g(k, l)));
                    }
                }
            }
        }
    }
    out
}

/// Echelon basis of the degree-`d` part of the relation ideal, with
/// non-normal words ordered before normal ones so that pivots prefer them.
pub struct Quotient {
    pub index: HashMap<Word, usize>,
    pub words: Vec<Word>,
    pub pivots: HashMap<usize, Vector>,
    pub normal_start: usize,
}

fn reduce(pivots: &HashMap<usize, Vector>, mut v: Vector) -> Vector {
    loop {
        let lead = v.keys().copied().find(|c| pivots.contains_key(c));
        let Some(col) = lead else { return v };
        let p = &pivots[&col];
        let f = v[&col].clone();
        for (k, x) in p {
            let e = v.entry(*k).or_insert_with(Rational::zero);
            *e -= &f * x;
            if e.is_zero() {
                v.remove(k);
            }
        }
    }
}

impl Quotient {
    pub fn new(alg: &BraidAlgebra, d: usize) -> Self {
        let all = alg.alphabet().words_of_degree(d);
        let (normal, other): (Vec<Word>, Vec<Word>) = all.into_iter().partition(|w| alg.is_normal(w));
        let normal_start = other.len();
        let words: Vec<Word> = other.into_iter().chain(normal).collect();
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut pivots: HashMap<usize, Vector> = HashMap::new();
        if d >= 2 {
            for r in relations(alg) {
                for k in 0..=d - 2 {
                    for u in alg.alphabet().words_of_degree(k) {
                        for v in alg.alphabet().words_of_degree(d - 2 - k) {
                            let mut row = Vector::new();
                            for (m, c) in &r {
                                let w = u.concat(m).concat(&v);
                                let e = row.entry(index[&w]).or_insert_with(Rational::zero);
                                *e += rat(*c, 1);
                            }
                            row.retain(|_, c| !c.is_zero());
                            let row = reduce(&pivots, row);
                            if let Some((&col, lead)) = row.iter().next() {
                                let inv = lead.recip();
                                let row: Vector = row.iter().map(|(k, x)| (*k, x * &inv)).collect();
                                pivots.insert(col, row);
                            }
                        }
                    }
                }
            }
        }
        Quotient { index, words, pivots, normal_start }
    }

    pub fn normal_form(&self, w: &Word) -> BTreeMap<Word, Rational> {
        let v = reduce(&self.pivots, Vector::from([(self.index[w], rat(1, 1))]));
        v.into_iter().map(|(k, c)| (self.words[k].clone(), c)).collect()
    }
}

pub fn as_map(lc: &[(Word, i64)]) -> BTreeMap<Word, Rational> {
    lc.iter().map(|(w, c)| (w.clone(), rat(*c, 1))).collect()
}

/// A degreewise pentagon solution with every free parameter above degree 2
/// set to `param` and, for free normalisation, `c_{X0X1} = quadratic`.
pub fn pentagon_solution(
    degree: usize,
    normalization: grtkit::assoc::Normalization,
    quadratic: Rational,
    param: Rational,
) -> grtkit::ncseries::Series<Rational> {
    use grtkit::ncseries::{X0, X1};
    let x0x1 = Word::from_letters(&[X0, X1]);
    let (phi, _) = grtkit::assoc::solve_pentagon(degree, normalization, |e| {
        let k = e.dimension().unwrap_or(0);
        if e.degree == 2 && k == 1 {
            let at = |t: i64| e.extend(&e.point(&[rat(t, 1)]).unwrap()).unwrap().coeff(&x0x1);
            let (c0, c1) = (at(0), at(1));
            vec![(&quadratic - &c0) / (c1 - &c0)]
        } else {
            vec![param.clone(); k]
        }
    })
    .unwrap();
    phi
}
