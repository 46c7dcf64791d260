use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::braid::BraidAlgebra;
use crate::ncseries::Word;

/// Integer combination of normal-form words.
pub type LinComb = Rc<[(Word, i64)]>;

thread_local! {
    static INSERT: RefCell<HashMap<(usize, Word, u8), LinComb>> = RefCell::new(HashMap::new());
    static PRODUCT: RefCell<HashMap<(usize, Word, Word), LinComb>> = RefCell::new(HashMap::new());
}

fn accumulate(acc: &mut BTreeMap<Word, i64>, w: Word, c: i64) {
    let e = acc.entry(w).or_insert(0);
    *e += c;
}

fn finish(acc: BTreeMap<Word, i64>) -> LinComb {
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// `[x, y]` for `level(x) < level(y)`, as a combination of level-`level(y)`
/// words of length two.
fn bracket(alg: &BraidAlgebra, x: u8, y: u8) -> Vec<(Word, i64)> {
    let (i, j) = alg.pair(x);
    let (k, m) = alg.pair(y);
    debug_assert!(j < m);
    let t = |a: usize| alg.gen(a, m).expect("generator");
    if k == i {
        // [t_ij, t_im] = t_im t_jm - t_jm t_im
        vec![(Word::from_letters(&[t(i), t(j)]), 1), (Word::from_letters(&[t(j), t(i)]), -1)]
    } else if k == j {
        // [t_ij, t_jm] = t_jm t_im - t_im t_jm
        vec![(Word::from_letters(&[t(j), t(i)]), 1), (Word::from_letters(&[t(i), t(j)]), -1)]
    } else {
        Vec::new()
    }
}

/// Normal form of `u x` for a normal word `u`.
fn insert(alg: &BraidAlgebra, u: &Word, x: u8) -> LinComb {
    match u.last() {
        None => return Rc::from(vec![(Word::letter(x), 1)]),
        Some(y) if alg.level(y) <= alg.level(x) => {
            let mut w = u.clone();
            w.push(x);
            return Rc::from(vec![(w, 1)]);
        }
        _ => {}
    }
    let key = (alg.strands(), u.clone(), x);
    if let Some(hit) = INSERT.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    // u = u' y with level(y) > level(x):  u' y x = (u' x) y - u' [x, y]
    let y = u.last().expect("non-empty");
    let prefix = u.prefix(u.len() - 1);
    let mut acc = BTreeMap::new();
    for (v, c) in insert(alg, &prefix, x).iter() {
        let mut w = v.clone();
        w.push(y);
        accumulate(&mut acc, w, *c);
    }
    for (b, c) in bracket(alg, x, y) {
        accumulate(&mut acc, prefix.concat(&b), -c);
    }
    let out = finish(acc);
    INSERT.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

/// Normal form of the concatenation of two normal words.
pub fn normal_product(alg: &BraidAlgebra, u: &Word, v: &Word) -> LinComb {
    let sorted = match (u.last(), v.first()) {
        (Some(a), Some(b)) => alg.level(a) <= alg.level(b),
        _ => true,
    };
    if sorted {
        return Rc::from(vec![(u.concat(v), 1)]);
    }
    let key = (alg.strands(), u.clone(), v.clone());
    if let Some(hit) = PRODUCT.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut current: BTreeMap<Word, i64> = BTreeMap::from([(u.clone(), 1)]);
    for &x in v.letters() {
        let mut next = BTreeMap::new();
        for (w, c) in current {
            for (z, d) in insert(alg, &w, x).iter() {
                accumulate(&mut next, z.clone(), c * d);
            }
        }
        next.retain(|_, c| *c != 0);
        current = next;
    }
    let out = finish(current);
    PRODUCT.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

/// Normal form of an arbitrary word in the generators.
pub fn normal_form(alg: &BraidAlgebra, w: &Word) -> LinComb {
    let mut current: BTreeMap<Word, i64> = BTreeMap::from([(Word::empty(), 1)]);
    for &x in w.letters() {
        let mut next = BTreeMap::new();
        for (u, c) in current {
            for (z, d) in normal_product(alg, &u, &Word::letter(x)).iter() {
                accumulate(&mut next, z.clone(), c * d);
            }
        }
        next.retain(|_, c| *c != 0);
        current = next;
    }
    finish(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(alg: &BraidAlgebra, s: &str) -> Vec<(String, i64)> {
        let w = alg.parse_raw_word(s).unwrap();
        normal_form(alg, &w).iter().map(|(w, c)| (alg.alphabet().format_word(w), *c)).collect()
    }

    #[test]
    fn straightening_example() {
        let a4 = BraidAlgebra::a4();
        assert_eq!(nf(&a4, "t12 t24"), vec![("t12 t24".to_string(), 1)]);
        let mut got = nf(&a4, "t24 t12");
        got.sort();
        let mut want = vec![("t12 t24".to_string(), 1), ("t24 t14".to_string(), -1), ("t14 t24".to_string(), 1)];
        want.sort();
        assert_eq!(got, want);
        assert_eq!(nf(&a4, "t12 t34"), nf(&a4, "t34 t12"));
    }

    #[test]
    fn normal_words_are_fixed() {
        let a4 = BraidAlgebra::a4();
        for w in a4.basis(3) {
            assert_eq!(&*normal_form(&a4, &w), &[(w.clone(), 1)]);
        }
    }
}
