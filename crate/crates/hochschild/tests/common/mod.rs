//! Reference computations that share no code with the library: Hochschild
//! differentials built straight from integer structure constants, and rank by
//! integer elimination or by elimination mod p.

#![allow(dead_code)]

/// Integer structure constants c[i][j][k] of b_i·b_j = Σ c_{ij}^k b_k.
pub struct IntAlgebra {
    pub dim: usize,
    pub c: Vec<Vec<Vec<i128>>>,
}

impl IntAlgebra {
    /// k[x]/(x^n) on 1, x, .., x^{n−1}.
    pub fn truncated(n: usize) -> Self {
        let mut c = vec![vec![vec![0; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    c[i][j][i + j] = 1;
                }
            }
        }
        IntAlgebra { dim: n, c }
    }

    /// The group algebra of Z/n on 1, g, .., g^{n−1}.
    pub fn cyclic(n: usize) -> Self {
        let mut c = vec![vec![vec![0; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                c[i][j][(i + j) % n] = 1;
            }
        }
        IntAlgebra { dim: n, c }
    }
}

fn tuples(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// ∂^n : Hom(A^{⊗n}, A) → Hom(A^{⊗(n+1)}, A), as a dense integer matrix.
pub fn differential(a: &IntAlgebra, n: usize) -> Vec<Vec<i128>> {
    let d = a.dim;
    let src = tuples(d, n);
    let dst = tuples(d, n + 1);
    let col = |t: &[usize], k: usize| src.iter().position(|s| s == t).unwrap() * d + k;
    let mut m = vec![vec![0i128; src.len() * d]; dst.len() * d];
    for (si, s) in dst.iter().enumerate() {
        for out in 0..d {
            let row = &mut m[si * d + out];
            // s_0 · φ(s_1..s_n)
            for k in 0..d {
                row[col(&s[1..], k)] += a.c[s[0]][k][out];
            }
            for i in 1..=n {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for p in 0..d {
                    let c = a.c[s[i - 1]][s[i]][p];
                    if c != 0 {
                        let mut t = s[..i - 1].to_vec();
                        t.push(p);
                        t.extend_from_slice(&s[i + 1..]);
                        row[col(&t, out)] += sign * c;
                    }
                }
            }
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            for k in 0..d {
                row[col(&s[..n], k)] += sign * a.c[k][s[n]][out];
            }
        }
    }
    m
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rank over Q by fraction-free elimination with row content removal.
pub fn rank_q(mut m: Vec<Vec<i128>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let piv = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let mut g = 0;
            for (x, y) in row.iter_mut().zip(&piv) {
                *x = piv[c].checked_mul(*x).and_then(|v| v.checked_sub(f.checked_mul(*y)?)).expect("oracle overflow");
                g = gcd(g, *x);
            }
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

/// Rank over GF(p).
pub fn rank_p(m: &[Vec<i128>], p: i128) -> usize {
    let mut m: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let inv = |a: i128| (1..p).find(|b| a * b % p == 1).unwrap();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let s = inv(m[r][c]);
        m[r].iter_mut().for_each(|x| *x = *x * s % p);
        let piv = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&piv) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        r += 1;
    }
    r
}

/// dim HH^0..HH^top, with `p = None` for the rationals.
pub fn hh_dims(a: &IntAlgebra, top: usize, p: Option<i128>) -> Vec<usize> {
    let rank = |n: usize| {
        let m = differential(a, n);
        match p {
            None => rank_q(m),
            Some(p) => rank_p(&m, p),
        }
    };
    let ranks: Vec<usize> = (0..=top).map(rank).collect();
    (0..=top)
        .map(|n| a.dim.pow(n as u32 + 1) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect()
}
