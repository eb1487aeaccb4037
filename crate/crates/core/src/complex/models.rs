//! Model complexes: staircases, the box family `D_s`, and the blocks
//! `C_{n,k}` and `C'_{n,k}`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BifilteredComplex, ComplexError, Generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    /// Staircase of `T(2, 2n+1)`.
    C(i64),
    /// A single generator.
    C0,
    /// The box family `D_s`.
    D(i64),
    Cnk(i64, i64),
    Cpnk(i64, i64),
    /// `D_1`.
    Box,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::C(n) => write!(f, "C({n})"),
            ModelKind::C0 => write!(f, "C0"),
            ModelKind::D(s) => write!(f, "D({s})"),
            ModelKind::Cnk(n, k) => write!(f, "Cnk({n},{k})"),
            ModelKind::Cpnk(n, k) => write!(f, "Cpnk({n},{k})"),
            ModelKind::Box => write!(f, "Box"),
        }
    }
}

fn need(cond: bool, what: &str) -> Result<(), ComplexError> {
    if cond {
        Ok(())
    } else {
        Err(ComplexError::InvalidParameter(what.to_string()))
    }
}

pub fn model(kind: ModelKind) -> Result<BifilteredComplex, ComplexError> {
    match kind {
        ModelKind::C(n) => {
            need(n >= 1, "C(n) needs n >= 1")?;
            Ok(c_n(n))
        }
        ModelKind::C0 => BifilteredComplex::new(vec![Generator::new("x", 0, 0, 0)], []),
        ModelKind::D(s) => {
            need(s >= 1, "D(s) needs s >= 1")?;
            d_s(s)
        }
        ModelKind::Box => d_s(1),
        ModelKind::Cnk(n, k) => {
            need(n >= 1 && k >= 2, "Cnk(n,k) needs n >= 1 and k >= 2")?;
            c_nk(n, k)
        }
        ModelKind::Cpnk(n, k) => {
            need(n >= 1 && k >= 2, "Cpnk(n,k) needs n >= 1 and k >= 2")?;
            cp_nk(n, k)
        }
    }
}

fn c_n(n: i64) -> BifilteredComplex {
    let mut gens = Vec::new();
    for i in 1..=n {
        gens.push(Generator::new(
            format!("a{i}"),
            -2 * (n + 1 - i) + 1,
            0,
            -n + 2 * i - 1,
        ));
    }
    for i in 1..=n + 1 {
        gens.push(Generator::new(
            format!("b{i}"),
            -2 * (n + 1 - i),
            0,
            -n + 2 * i - 2,
        ));
    }
    let a = |i: i64| (i - 1) as usize;
    let b = |i: i64| (n + i - 1) as usize;
    let mut edges = Vec::new();
    for i in 1..=n {
        edges.push((a(i), b(i + 1), 1));
        edges.push((a(i), b(i), 0));
    }
    BifilteredComplex::new(gens, edges).expect("staircase is valid")
}

/// Places generators from differential shifts with `u = 0` on every term,
/// anchoring `anchor` at `(maslov, i, j)`.
fn from_shifts(
    names: &[String],
    anchor: (&str, i64, i64, i64),
    shifts: &[(String, String, i64, i64)],
) -> Result<BifilteredComplex, ComplexError> {
    let index: HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(k, s)| (s.as_str(), k))
        .collect();
    let mut adj: Vec<Vec<(usize, i64, i64, i64)>> = vec![Vec::new(); names.len()];
    let mut edges = Vec::new();
    for (a, b, di, dj) in shifts {
        let (x, y) = (index[a.as_str()], index[b.as_str()]);
        adj[x].push((y, -1, -di, -dj));
        adj[y].push((x, 1, *di, *dj));
        edges.push((x, y, 0));
    }
    let mut pos: Vec<Option<(i64, i64, i64)>> = vec![None; names.len()];
    let start = index[anchor.0];
    pos[start] = Some((anchor.1, anchor.2, anchor.3));
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let (m, i, j) = pos[x].unwrap();
        for &(y, dm, di, dj) in &adj[x] {
            let p = (m + dm, i + di, j + dj);
            match pos[y] {
                None => {
                    pos[y] = Some(p);
                    queue.push_back(y);
                }
                Some(q) if q != p => {
                    return Err(ComplexError::InvalidGrading(format!(
                        "inconsistent shifts at {}",
                        names[y]
                    )))
                }
                _ => {}
            }
        }
    }
    let gens = names
        .iter()
        .zip(pos)
        .map(|(name, p)| {
            let (m, i, j) = p.expect("model graph is connected");
            Generator::new(name.clone(), m, i, j)
        })
        .collect();
    BifilteredComplex::new(gens, edges)
}

/// Staircase block `x_0 .. x_{2n}` with prefix `p`.
fn stair_shifts(p: &str, n: i64, out: &mut Vec<(String, String, i64, i64)>) {
    for i in 0..n {
        out.push((format!("{p}{}", 2 * i + 1), format!("{p}{}", 2 * i), 1, 0));
        out.push((
            format!("{p}{}", 2 * i + 1),
            format!("{p}{}", 2 * i + 2),
            0,
            1,
        ));
    }
}

fn d_s(s: i64) -> Result<BifilteredComplex, ComplexError> {
    let mut names: Vec<String> = (0..=2 * s).map(|i| format!("x{i}")).collect();
    names.push("y".into());
    let mut shifts = Vec::new();
    stair_shifts("x", s, &mut shifts);
    for i in 0..=s {
        shifts.push((format!("x{}", 2 * i), "y".into(), i, s - i));
    }
    from_shifts(&names, ("y", 0, 0, 0), &shifts)
}

fn block_names(n: i64, blocks: i64, ys: impl Iterator<Item = i64>) -> Vec<String> {
    let mut names = Vec::new();
    for j in 1..=blocks {
        for i in 0..=2 * n {
            names.push(format!("x{j}_{i}"));
        }
    }
    names.extend(ys.map(|j| format!("y{j}")));
    names
}

fn c_nk(n: i64, k: i64) -> Result<BifilteredComplex, ComplexError> {
    let names = block_names(n, k - 1, 1..=k - 2);
    let mut shifts = Vec::new();
    for j in 1..=k - 1 {
        stair_shifts(&format!("x{j}_"), n, &mut shifts);
        for i in 0..=n {
            let x = format!("x{j}_{}", 2 * i);
            if j <= k - 2 {
                shifts.push((x.clone(), format!("y{j}"), i + j, n - i));
            }
            if j >= 2 {
                shifts.push((x, format!("y{}", j - 1), i, k - j + n - i));
            }
        }
    }
    from_shifts(&names, ("x1_0", 0, 0, 0), &shifts)?.normalized()
}

fn cp_nk(n: i64, k: i64) -> Result<BifilteredComplex, ComplexError> {
    let names = block_names(n, k - 1, 1..=k);
    let mut shifts = Vec::new();
    for j in 1..=k - 1 {
        stair_shifts(&format!("x{j}_"), n, &mut shifts);
        for i in 0..=n {
            let x = format!("x{j}_{}", 2 * i);
            shifts.push((x.clone(), format!("y{j}"), i, n - i + j));
            shifts.push((x, format!("y{}", j + 1), i + k - j, n - i));
        }
    }
    from_shifts(&names, ("y1", 0, 0, 0), &shifts)?.normalized()
}

/// Positive staircase from alternating horizontal and vertical step lengths
/// `[h1, v1, h2, v2, ...]`, read from the top Alexander grading down.
pub fn positive_staircase(steps: &[i64]) -> Result<BifilteredComplex, ComplexError> {
    need(
        steps.len().is_multiple_of(2),
        "staircase needs an even number of steps",
    )?;
    need(
        steps.iter().all(|&l| l >= 1),
        "staircase steps must be positive",
    )?;
    let total: i64 = steps.iter().sum();
    need(total % 2 == 0, "staircase steps must have even total")?;
    let mut gens = vec![Generator::new("z0", 0, 0, total / 2)];
    let mut edges = Vec::new();
    for (t, pair) in steps.chunks(2).enumerate() {
        let (h, v) = (pair[0], pair[1]);
        let top = &gens[2 * t];
        let mid = Generator::new(
            format!("z{}", 2 * t + 1),
            top.maslov - 2 * h + 1,
            0,
            top.j - h,
        );
        let low = Generator::new(format!("z{}", 2 * t + 2), mid.maslov - 1, 0, mid.j - v);
        edges.push((2 * t + 1, 2 * t, h));
        edges.push((2 * t + 1, 2 * t + 2, 0));
        gens.push(mid);
        gens.push(low);
    }
    BifilteredComplex::new(gens, edges)
}

/// Symmetric positive staircase from its vertical arrow lengths in order
/// from the top; horizontal lengths are the same list reversed.
pub fn staircase_from_vertical(vertical: &[i64]) -> Result<BifilteredComplex, ComplexError> {
    let r = vertical.len();
    let steps: Vec<i64> = (0..r)
        .flat_map(|t| [vertical[r - 1 - t], vertical[t]])
        .collect();
    positive_staircase(&steps)
}

/// Exponents of the Alexander polynomial of the positive torus knot `T(p,q)`
/// in decreasing order.
pub fn torus_alexander_exponents(p: i64, q: i64) -> Vec<i64> {
    // (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)), computed by long division.
    let deg = (p * q + 1) as usize;
    let mut num = vec![0i64; deg + 1];
    num[0] += 1;
    num[1] -= 1;
    num[deg - 1] -= 1;
    num[deg] += 1;
    let divide = |num: Vec<i64>, d: usize| -> Vec<i64> {
        // divide by t^d - 1
        let mut rem = num;
        let top = rem.len() - 1;
        let mut quo = vec![0i64; top + 1 - d];
        for e in (d..=top).rev() {
            let c = rem[e];
            if c != 0 {
                quo[e - d] += c;
                rem[e] -= c;
                rem[e - d] += c;
            }
        }
        assert!(rem.iter().all(|&c| c == 0), "torus knot division not exact");
        quo
    };
    let quo = divide(divide(num, p as usize), q as usize);
    let half = (quo.len() as i64 - 1) / 2;
    (0..quo.len())
        .rev()
        .filter(|&e| quo[e] != 0)
        .map(|e| e as i64 - half)
        .collect()
}

/// Positive staircase of the torus knot `T(p,q)` for coprime `p, q >= 1`.
pub fn torus_knot(p: i64, q: i64) -> Result<BifilteredComplex, ComplexError> {
    need(
        p >= 1 && q >= 1 && num_integer::gcd(p, q) == 1,
        "torus knot needs coprime p, q >= 1",
    )?;
    let ex = torus_alexander_exponents(p, q);
    if ex.len() == 1 {
        return model(ModelKind::C0);
    }
    let steps: Vec<i64> = ex.windows(2).map(|w| w[0] - w[1]).collect();
    positive_staircase(&steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_model() {
        let c = model(ModelKind::C(1)).unwrap();
        let a1 = &c.generators()[c.index_of("a1").unwrap()];
        assert_eq!((a1.i, a1.j), (0, 0));
        let b2 = &c.generators()[c.index_of("b2").unwrap()];
        assert_eq!(b2.maslov, 0);
    }

    #[test]
    fn box_family_sizes_and_shifts() {
        for s in 1..=5 {
            let d = model(ModelKind::D(s)).unwrap();
            assert_eq!(d.len() as i64, 2 * s + 2);
            let y = d.index_of("y").unwrap();
            for i in 0..=s {
                let x = d.index_of(&format!("x{}", 2 * i)).unwrap();
                assert_eq!(d.delta(x, y), (i, s - i));
            }
            assert_eq!(d.homology_rank(), (0, true));
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(model(ModelKind::C(0)).is_err());
        assert!(model(ModelKind::D(0)).is_err());
        assert!(model(ModelKind::Cnk(1, 1)).is_err());
        assert!(model(ModelKind::Cpnk(0, 3)).is_err());
    }

    #[test]
    fn torus_exponents() {
        assert_eq!(torus_alexander_exponents(2, 3), vec![1, 0, -1]);
        assert_eq!(torus_alexander_exponents(3, 4), vec![3, 2, 0, -2, -3]);
    }

    #[test]
    fn torus_staircase_matches_model() {
        let t = torus_knot(2, 5).unwrap();
        let c = model(ModelKind::C(2)).unwrap();
        assert!(crate::complex::isomorphic(&t, &c).is_some());
    }
}
