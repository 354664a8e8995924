//! Small dense integer matrix helpers. Matrices are row-major `Vec<Vec<i64>>`.

pub type Matrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn is_square(m: &[Vec<i64>], n: usize) -> bool {
    m.len() == n && m.iter().all(|row| row.len() == n)
}

pub fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            let a_il = a[i][l];
            if a_il == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a_il * b[l][j];
            }
        }
    }
    out
}

/// `M v` with `v` as a column vector.
pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `v M` with `v` as a row vector.
pub fn vec_mat(v: &[i64], m: &[Vec<i64>]) -> Vec<i64> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![0i64; cols];
    for (vi, row) in v.iter().zip(m) {
        if *vi == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o += vi * x;
        }
    }
    out
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

fn minor(m: &[Vec<i64>], skip_row: usize, skip_col: usize) -> Matrix {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Inverse of a matrix with determinant ±1; `None` otherwise.
pub fn inverse_unimodular(m: &[Vec<i64>]) -> Option<Matrix> {
    let n = m.len();
    let d = det(m);
    if d != 1 && d != -1 {
        return None;
    }
    if n == 1 {
        return Some(vec![vec![d]]);
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let cof = det(&minor(m, i, j));
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            // adjugate is the transposed cofactor matrix
            inv[j][i] = sign * cof * d;
        }
    }
    Some(inv)
}

/// `m^k` for any integer `k`; `inverse` must be `m^{-1}` when `k < 0`.
pub fn pow(m: &[Vec<i64>], inverse: &[Vec<i64>], k: i64) -> Matrix {
    let n = m.len();
    let mut base: Matrix = if k < 0 { inverse.to_vec() } else { m.to_vec() };
    let mut e = k.unsigned_abs();
    let mut acc = identity(n);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

pub fn transpose(m: &[Vec<i64>]) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn format_matrix(m: &[Vec<i64>]) -> String {
    m.iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

/// Parses row-major `"a,b;c,d"` syntax.
pub fn parse_matrix(s: &str) -> Option<Matrix> {
    let rows: Option<Matrix> = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>().ok())
                .collect()
        })
        .collect();
    let rows = rows?;
    let n = rows.first()?.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return None;
    }
    Some(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(det(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
        assert_eq!(det(&[vec![0, 0], vec![1, 1]]), 0);
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = vec![vec![2, 1, 0], vec![1, 1, 0], vec![3, 0, 1]];
        let inv = inverse_unimodular(&m).unwrap();
        assert_eq!(mul(&m, &inv), identity(3));
        assert!(inverse_unimodular(&[vec![2, 0], vec![0, 1]]).is_none());
    }

    #[test]
    fn powers() {
        let m = vec![vec![2, 1], vec![1, 1]];
        let inv = inverse_unimodular(&m).unwrap();
        assert_eq!(pow(&m, &inv, 0), identity(2));
        assert_eq!(pow(&m, &inv, 3), mul(&m, &mul(&m, &m)));
        assert_eq!(mul(&pow(&m, &inv, -2), &pow(&m, &inv, 2)), identity(2));
    }

    #[test]
    fn matrix_syntax() {
        assert_eq!(parse_matrix("3,0;0,3"), Some(vec![vec![3, 0], vec![0, 3]]));
        assert_eq!(parse_matrix("1,2;3"), None);
        assert_eq!(parse_matrix("x"), None);
        assert_eq!(format_matrix(&[vec![1, -2], vec![0, 5]]), "1,-2;0,5");
    }
}
