use std::collections::BTreeMap;

use crate::ncseries::alphabet::Word;

/// Shuffle product of two words as a multiset `word -> multiplicity`.
/// The multiplicities sum to `binom(|u|+|v|, |u|)`.
pub fn shuffle(u: &Word, v: &Word) -> BTreeMap<Word, u64> {
    let mut out = BTreeMap::new();
    let mut buf = Word::empty();
    interleave(u.letters(), v.letters(), &mut buf, &mut out);
    out
}

fn interleave(u: &[u8], v: &[u8], buf: &mut Word, out: &mut BTreeMap<Word, u64>) {
    if u.is_empty() || v.is_empty() {
        let mut w = buf.clone();
        for &l in u.iter().chain(v) {
            w.push(l);
        }
        *out.entry(w).or_insert(0) += 1;
        return;
    }
    buf.push(u[0]);
    interleave(&u[1..], v, buf, out);
    buf.pop();
    buf.push(v[0]);
    interleave(u, &v[1..], buf, out);
    buf.pop();
}

/// Shuffle of a multiset of words with one more word.
pub fn shuffle_multiset(a: &BTreeMap<Word, u64>, v: &Word) -> BTreeMap<Word, u64> {
    let mut out = BTreeMap::new();
    for (u, m) in a {
        for (w, k) in shuffle(u, v) {
            *out.entry(w).or_insert(0) += m * k;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[u8]) -> Word {
        Word::from_letters(letters)
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_examples() {
        let s = shuffle(&w(&[0]), &w(&[1]));
        assert_eq!(s, BTreeMap::from([(w(&[0, 1]), 1), (w(&[1, 0]), 1)]));
        let s = shuffle(&w(&[0]), &w(&[0]));
        assert_eq!(s, BTreeMap::from([(w(&[0, 0]), 2)]));
    }

    #[test]
    fn three_interleavings_by_brute_force() {
        // place the single X0 of v at each of the three slots of X0 X1
        let u = [0u8, 1];
        let mut brute: BTreeMap<Word, u64> = BTreeMap::new();
        for slot in 0..=u.len() {
            let mut letters = u.to_vec();
            letters.insert(slot, 0);
            *brute.entry(w(&letters)).or_insert(0) += 1;
        }
        assert_eq!(shuffle(&w(&u), &w(&[0])), brute);
        assert_eq!(brute[&w(&[0, 0, 1])], 2);
        assert_eq!(brute[&w(&[0, 1, 0])], 1);
    }

    #[test]
    fn cardinality_is_binomial_up_to_length_four() {
        let mut words = vec![Word::empty()];
        for len in 1..=4 {
            for bits in 0..(1u32 << len) {
                words.push((0..len).map(|i| ((bits >> i) & 1) as u8).collect());
            }
        }
        for u in &words {
            for v in &words {
                let total: u64 = shuffle(u, v).values().sum();
                assert_eq!(total, binom((u.len() + v.len()) as u64, u.len() as u64));
            }
        }
    }
}
