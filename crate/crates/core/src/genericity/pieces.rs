use crate::words::{CyclicWord, Letter};

/// Length of the longest piece of the symmetrized closure of `w`: the
/// longest common prefix of two distinct members among the `2|w|` cyclic
/// permutations of `w` and `w⁻¹`, counted by position. A prefix as long as
/// `w` itself only arises when two positions spell the same word, so common
/// prefixes are capped at `|w| - 1`; for `aᵏ` this gives `k - 1`.
pub fn max_piece_length(w: &CyclicWord) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let fwd = w.rep().letters();
    let inv = w.inverse().rep().letters().to_vec();
    let rotation = |i: usize| -> Box<dyn Iterator<Item = Letter> + '_> {
        let src: &[Letter] = if i < n { fwd } else { &inv };
        let k = i % n;
        Box::new(src[k..].iter().chain(&src[..k]).copied())
    };
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&i, &j| rotation(i).cmp(rotation(j)));
    order
        .windows(2)
        .map(|p| rotation(p[0]).zip(rotation(p[1])).take_while(|(x, y)| x == y).count())
        .max()
        .unwrap_or(0)
        .min(n - 1)
}
