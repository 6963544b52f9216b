//! Tetrahedron volume by integrating the Schläfli differential along a path
//! that opens the three finite edges of the face opposite an ideal vertex
//! from right angles down to their target angles.

use std::f64::consts::PI;

/// Dihedral angles indexed by face pair `(i, j)`, `i < j`, in the order
/// `(0,1) (0,2) (0,3) (1,2) (1,3) (2,3)`.
pub const FACE_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = (i.min(j), i.max(j));
    FACE_PAIRS.iter().position(|&p| p == (a, b)).unwrap()
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn cofactor(g: &[[f64; 4]; 4], r: usize, c: usize) -> f64 {
    let rows: Vec<usize> = (0..4).filter(|&i| i != r).collect();
    let cols: Vec<usize> = (0..4).filter(|&j| j != c).collect();
    let mut m = [[0.0; 3]; 3];
    for (a, &i) in rows.iter().enumerate() {
        for (b, &j) in cols.iter().enumerate() {
            m[a][b] = g[i][j];
        }
    }
    let sign = if (r + c) % 2 == 0 { 1.0 } else { -1.0 };
    sign * det3(m)
}

fn gram(angles: &[f64; 6]) -> [[f64; 4]; 4] {
    let mut g = [[1.0; 4]; 4];
    for (k, &(i, j)) in FACE_PAIRS.iter().enumerate() {
        g[i][j] = -angles[k].cos();
        g[j][i] = g[i][j];
    }
    g
}

/// Length of the edge shared by faces `a` and `b`; its endpoints are the
/// vertices opposite the other two faces.
fn edge_length(angles: &[f64; 6], a: usize, b: usize) -> f64 {
    let g = gram(angles);
    let others: Vec<usize> = (0..4).filter(|&k| k != a && k != b).collect();
    let (j, l) = (others[0], others[1]);
    let c = cofactor(&g, j, l);
    let x = c.abs() / (cofactor(&g, j, j) * cofactor(&g, l, l)).sqrt();
    x.max(1.0).acosh()
}

fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let mut x = (PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
            loop {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (mut q0, mut q1) = (1.0, x);
                    for k in 2..=n {
                        let q2 = ((2 * k - 1) as f64 * x * q1 - (k - 1) as f64 * q0) / k as f64;
                        q0 = q1;
                        q1 = q2;
                    }
                    let d = n as f64 * (x * q1 - q0) / (x * x - 1.0);
                    return (x, 2.0 / ((1.0 - x * x) * d * d));
                }
            }
        })
        .collect()
}

/// Face pairs meeting at the vertex opposite face `k`.
fn at_vertex(k: usize) -> Vec<usize> {
    FACE_PAIRS
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| i != k && j != k)
        .map(|(e, _)| e)
        .collect()
}

/// Volume from Coxeter labels indexed like [`FACE_PAIRS`]. Needs exactly one
/// ideal vertex; returns `None` otherwise.
pub fn volume(labels: [u32; 6], panels: usize) -> Option<f64> {
    let target: Vec<f64> = labels.iter().map(|&n| PI / n as f64).collect();
    let ideal: Vec<usize> = (0..4)
        .filter(|&k| (at_vertex(k).iter().map(|&e| target[e]).sum::<f64>() - PI).abs() < 1e-12)
        .collect();
    let [k] = ideal[..] else { return None };
    let moving: Vec<(usize, usize)> = (0..4).filter(|&i| i != k).map(|i| (i, k)).collect();
    let angles_at = |t: f64| {
        let mut a = [0.0; 6];
        for e in 0..6 {
            a[e] = target[e];
        }
        for &(i, k) in &moving {
            let e = pair_index(i, k);
            a[e] = PI / 2.0 + t * (target[e] - PI / 2.0);
        }
        a
    };
    let nodes = gauss_legendre(16);
    let mut total = 0.0;
    for p in 0..panels {
        let (lo, hi) = (p as f64 / panels as f64, (p + 1) as f64 / panels as f64);
        for &(x, w) in &nodes {
            let t = lo + (hi - lo) * (x + 1.0) / 2.0;
            let a = angles_at(t);
            let mut dv = 0.0;
            for &(i, k) in &moving {
                let e = pair_index(i, k);
                dv += edge_length(&a, i, k) * (target[e] - PI / 2.0);
            }
            total += w * (hi - lo) / 2.0 * (-0.5 * dv);
        }
    }
    Some(total)
}
