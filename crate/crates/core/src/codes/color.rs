use std::collections::HashMap;

use super::{css_check, CodeError, StabilizerCode};

/// Triangular (6,6,6) planar color code, `[[(3d² + 1)/4, 1]]`, odd `d ≥ 3`.
pub fn color_code_666(d: usize) -> Result<StabilizerCode, CodeError> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(CodeError::InvalidDistance {
            family: "color666",
            d,
            requirement: "odd d >= 3",
        });
    }
    let side = 3 * (d - 1) / 2;
    let colour = |a: usize, b: usize| (a + 2 * b + 1) % 3; // (a - b + 1) mod 3

    let mut qubit_index = HashMap::new();
    let mut centres = Vec::new();
    for a in 0..=side {
        for b in 0..=side - a {
            if colour(a, b) == 0 {
                centres.push((a, b));
            } else {
                let next = qubit_index.len();
                qubit_index.insert((a, b), next);
            }
        }
    }
    let n = qubit_index.len();

    let mut faces = Vec::new();
    for &(a, b) in &centres {
        let (a, b) = (a as isize, b as isize);
        let mut support: Vec<usize> = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)]
            .iter()
            .filter_map(|&(da, db)| {
                let (na, nb) = (a + da, b + db);
                if na < 0 || nb < 0 {
                    return None;
                }
                qubit_index.get(&(na as usize, nb as usize)).copied()
            })
            .collect();
        if support.len() >= 4 {
            support.sort_unstable();
            faces.push(support);
        }
    }
    StabilizerCode::new(
        format!("color666_d{d}"),
        1,
        Some(d),
        css_check(n, &faces, &faces),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steane_is_hamming() {
        let c = color_code_666(3).unwrap();
        assert_eq!((c.n, c.k, c.m(), c.check.rank()), (7, 1, 6, 6));
        // every nonzero column pattern of the 3 X rows appears exactly once
        let mut cols: Vec<u8> = (0..7)
            .map(|q| {
                (0..3).fold(0u8, |acc, r| acc << 1 | c.check.row(r).x_bits().get(q) as u8)
            })
            .collect();
        cols.sort_unstable();
        assert_eq!(cols, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn parameters_and_identical_supports() {
        assert_eq!(color_code_666(5).unwrap().n, 19);
        assert_eq!(color_code_666(7).unwrap().n, 37);
        let c = color_code_666(5).unwrap();
        let half = c.m() / 2;
        for i in 0..half {
            assert_eq!(c.check.row(i).x_bits(), c.check.row(half + i).z_bits());
        }
        assert!(color_code_666(4).is_err());
        assert!(color_code_666(1).is_err());
    }
}
