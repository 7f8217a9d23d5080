//! Cartan matrices and diagram symmetries in Bourbaki numbering (0-based).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
    F,
    E,
}

impl Family {
    pub fn is_exceptional(self) -> bool {
        matches!(self, Family::G | Family::F | Family::E)
    }
}

/// `C[i][j] = <alpha_j, alpha_i^vee>`.
pub fn cartan_matrix(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A | Family::B | Family::C | Family::F | Family::G => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        Family::D => {
            if n >= 3 {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
        }
        Family::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    match family {
        Family::B if n >= 2 => c[n - 1][n - 2] = -2,
        Family::C if n >= 2 => c[n - 2][n - 1] = -2,
        Family::G => c[0][1] = -3,
        Family::F => c[2][1] = -2,
        _ => {}
    }
    c
}

/// Fundamental degrees of the irreducible Weyl group of type `family_n`.
pub fn degrees(family: Family, n: usize) -> Vec<u64> {
    let n64 = n as u64;
    let mut d: Vec<u64> = match family {
        Family::A => (2..=n64 + 1).collect(),
        Family::B | Family::C => (1..=n64).map(|i| 2 * i).collect(),
        Family::D => {
            let mut v: Vec<u64> = (1..n64).map(|i| 2 * i).collect();
            v.push(n64);
            v
        }
        Family::G => vec![2, 6],
        Family::F => vec![2, 6, 8, 12],
        Family::E => match n {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            _ => panic!("E{n} is not a finite type"),
        },
    };
    d.sort_unstable();
    d
}

/// Nontrivial diagram symmetry of the given order, as a permutation of nodes.
pub fn diagram_symmetry(family: Family, n: usize, order: u32) -> Option<Vec<usize>> {
    match (family, order) {
        (Family::A, 2) if n >= 2 => Some((0..n).map(|i| n - 1 - i).collect()),
        (Family::D, 2) if n >= 3 => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            Some(p)
        }
        (Family::D, 2) if n == 2 => Some(vec![1, 0]),
        (Family::D, 3) if n == 4 => Some(vec![2, 1, 3, 0]),
        (Family::E, 2) if n == 6 => Some(vec![5, 1, 4, 3, 2, 0]),
        _ => None,
    }
}

pub fn is_valid_rank(family: Family, n: usize) -> bool {
    match family {
        Family::A | Family::B | Family::C => n >= 1,
        Family::D => n >= 2,
        Family::G => n == 2,
        Family::F => n == 4,
        Family::E => (6..=8).contains(&n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_and_f4_shapes() {
        assert_eq!(cartan_matrix(Family::G, 2), vec![vec![2, -3], vec![-1, 2]]);
        let f4 = cartan_matrix(Family::F, 4);
        assert_eq!(f4[1][2], -1);
        assert_eq!(f4[2][1], -2);
    }

    #[test]
    fn symmetries_preserve_cartan() {
        for (fam, n, ord) in [
            (Family::A, 4, 2),
            (Family::D, 5, 2),
            (Family::D, 4, 3),
            (Family::E, 6, 2),
            (Family::D, 2, 2),
        ] {
            let c = cartan_matrix(fam, n);
            let p = diagram_symmetry(fam, n, ord).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(c[p[i]][p[j]], c[i][j], "{fam:?}{n}");
                }
            }
        }
    }

    #[test]
    fn degree_tables() {
        assert_eq!(degrees(Family::D, 4), vec![2, 4, 4, 6]);
        assert_eq!(degrees(Family::E, 6), vec![2, 5, 6, 8, 9, 12]);
        assert_eq!(degrees(Family::A, 1), vec![2]);
    }
}
