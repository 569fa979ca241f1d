use crate::ff::{Fe, Gf};

/// Number of points of `P^n` over a field with `q` elements.
pub fn proj_count(n: u32, q: u64) -> u64 {
    (0..=n).map(|i| q.pow(i)).sum()
}

/// Normalized points of `P^n(f)`: the leading 1 moves right, trailing
/// coordinates run over the field in encoding order.
pub fn enumerate_proj(n: usize, f: &Gf) -> impl Iterator<Item = Vec<Fe>> + '_ {
    let q = f.size();
    (0..=n).flat_map(move |lead| {
        let free = (n - lead) as u32;
        (0..q.pow(free)).map(move |mut code| {
            let mut v = vec![Fe::ZERO; n + 1];
            v[lead] = Fe::ONE;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = Fe(code % q);
                code /= q;
            }
            v
        })
    })
}
