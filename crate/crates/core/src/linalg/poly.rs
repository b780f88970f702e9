//! Univariate polynomials over `F_p` (coefficients low to high), just enough
//! to find the `F_p`-rational eigenvalues of a matrix.

use super::{Field, Matrix};

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn mul(f: Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

fn rem(f: Field, a: &[u32], m: &[u32]) -> Vec<u32> {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = f.inv(m[dm]);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (i, &mc) in m[..=dm].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mc));
        }
        r = trim(r);
    }
    r
}

fn monic(f: Field, a: Vec<u32>) -> Vec<u32> {
    let a = trim(a);
    match a.last() {
        None => a,
        Some(&lead) => {
            let inv = f.inv(lead);
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
    }
}

fn gcd(f: Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, a)
}

fn powmod(f: Field, base: &[u32], mut exp: u64, m: &[u32]) -> Vec<u32> {
    let mut acc = rem(f, &[1], m);
    let mut b = rem(f, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        exp >>= 1;
        if exp > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    acc
}

fn eval(f: Field, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Characteristic polynomial `det(xI − A)` of a square matrix, via reduction
/// to upper Hessenberg form. Returned monic, coefficients low to high.
pub fn charpoly(a: &Matrix) -> Vec<u32> {
    assert!(a.is_square(), "charpoly of a non-square matrix");
    let f = a.field();
    let n = a.rows();
    let mut h: Vec<Vec<u32>> = (0..n).map(|r| a.row(r).to_vec()).collect();

    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = f.inv(h[j + 1][j]);
        for i in j + 2..n {
            let u = f.mul(h[i][j], inv);
            if u == 0 {
                continue;
            }
            // row_i -= u * row_{j+1}; then col_{j+1} += u * col_i
            for k in 0..n {
                let t = f.mul(u, h[j + 1][k]);
                h[i][k] = f.sub(h[i][k], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[i]);
                row[j + 1] = f.add(row[j + 1], t);
            }
        }
    }

    // p_m = (x − h_mm) p_{m−1} − Σ_{i<m} h_im (Π_{k=i+1}^{m} h_{k,k−1}) p_{i−1}
    let mut polys: Vec<Vec<u32>> = vec![vec![1 % f.p()]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0u32; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h[m][m], c));
        }
        let mut prod = 1 % f.p();
        for i in (0..m).rev() {
            prod = f.mul(prod, h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let coef = f.mul(h[i][m], prod);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

const BRUTE_FORCE_LIMIT: u32 = 4096;

/// Distinct roots in `F_p` of a nonzero polynomial, in ascending order.
pub fn roots(f: Field, poly: &[u32]) -> Vec<u32> {
    let poly = monic(f, poly.to_vec());
    let Some(deg) = degree(&poly) else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let mut out = if f.p() <= BRUTE_FORCE_LIMIT {
        (0..f.p()).filter(|&x| eval(f, &poly, x) == 0).collect()
    } else {
        // g = gcd(poly, x^p − x) is the product of the distinct linear factors
        let xp = powmod(f, &[0, 1], f.p() as u64, &poly);
        let mut xp_minus_x = xp;
        xp_minus_x.resize(xp_minus_x.len().max(2), 0);
        xp_minus_x[1] = f.sub(xp_minus_x[1], 1);
        let g = gcd(f, &poly, &xp_minus_x);
        let mut found = Vec::new();
        split_linear(f, g, &mut found);
        found
    };
    out.sort_unstable();
    out.dedup();
    out
}

/// Equal-degree splitting of a squarefree product of linear factors (odd p).
fn split_linear(f: Field, g: Vec<u32>, out: &mut Vec<u32>) {
    let Some(d) = degree(&g) else { return };
    match d {
        0 => {}
        1 => out.push(f.neg(f.mul(g[0], f.inv(g[1])))),
        _ => {
            let half = (f.p() as u64 - 1) / 2;
            for a in 0..f.p() {
                let mut w = powmod(f, &[a, 1], half, &g);
                if w.is_empty() {
                    w.push(0);
                }
                w[0] = f.sub(w[0], 1);
                let h = gcd(f, &g, &w);
                let dh = degree(&h).unwrap_or(0);
                if dh > 0 && dh < d {
                    let other = {
                        // exact division g / h
                        let mut q = vec![0u32; d - dh + 1];
                        let mut r = g.clone();
                        for k in (0..=d - dh).rev() {
                            let c = r[k + dh];
                            q[k] = c;
                            for (i, &hc) in h.iter().enumerate() {
                                r[k + i] = f.sub(r[k + i], f.mul(c, hc));
                            }
                        }
                        q
                    };
                    split_linear(f, h, out);
                    split_linear(f, other, out);
                    return;
                }
            }
            unreachable!("failed to split a product of distinct linear factors");
        }
    }
}
