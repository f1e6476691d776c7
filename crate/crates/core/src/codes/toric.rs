use super::{css_check, CodeError, StabilizerCode};

/// Vertex/plaquette supports of the (optionally twisted) `d × d` torus.
fn torus_supports(d: usize, twist: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let d2 = d * d;
    let h = |r: usize, c: usize| r * d + c;
    let v = |r: usize, c: usize| d2 + r * d + c;
    // vertex one row down / up, with the twisted identification
    let down = |r: usize, c: usize| {
        if r + 1 == d {
            (0, (c + twist) % d)
        } else {
            (r + 1, c)
        }
    };
    let up = |r: usize, c: usize| {
        if r == 0 {
            (d - 1, (c + d - twist) % d)
        } else {
            (r - 1, c)
        }
    };
    let left = |c: usize| (c + d - 1) % d;
    let right = |c: usize| (c + 1) % d;

    let mut vertices = Vec::with_capacity(d2);
    let mut plaquettes = Vec::with_capacity(d2);
    for r in 0..d {
        for c in 0..d {
            let (ur, uc) = up(r, c);
            vertices.push(vec![h(r, c), h(r, left(c)), v(r, c), v(ur, uc)]);
            let (dr, dc) = down(r, c);
            plaquettes.push(vec![h(r, c), h(dr, dc), v(r, c), v(r, right(c))]);
        }
    }
    (vertices, plaquettes)
}

/// `[[2d², 2]]` toric code on a `d × d` torus.
pub fn toric_code(d: usize) -> Result<StabilizerCode, CodeError> {
    if d < 2 {
        return Err(CodeError::InvalidDistance {
            family: "toric",
            d,
            requirement: "d >= 2",
        });
    }
    let n = 2 * d * d;
    let (xs, zs) = torus_supports(d, 0);
    StabilizerCode::new(format!("toric_d{d}"), 2, Some(d), css_check(n, &xs, &zs))
}

/// Qubits conjugated by Hadamard to turn the toric code into the XZZX code:
/// every vertical edge.
pub fn xzzx_hadamard_qubits(d: usize) -> std::ops::Range<usize> {
    d * d..2 * d * d
}

/// Non-CSS XZZX code on the `d × d` torus, optionally with a twisted
/// periodic identification.
pub fn xzzx_code(d: usize, twist: Option<usize>) -> Result<StabilizerCode, CodeError> {
    if d < 2 {
        return Err(CodeError::InvalidDistance {
            family: "xzzx",
            d,
            requirement: "d >= 2",
        });
    }
    let twist = twist.unwrap_or(0);
    if twist >= d {
        return Err(CodeError::InvalidTwist { twist, d });
    }
    let n = 2 * d * d;
    let (xs, zs) = torus_supports(d, twist);
    let css = css_check(n, &xs, &zs);
    let rows = css
        .rows()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.hadamard_on(xzzx_hadamard_qubits(d));
            r
        })
        .collect();
    let check = crate::pauli_algebra::CheckMatrix::new(n, rows).expect("length n");
    let (name, dist) = if twist == 0 {
        (format!("xzzx_d{d}"), Some(d))
    } else {
        (format!("xzzx_d{d}_t{twist}"), None)
    };
    StabilizerCode::new(name, 2, dist, check)
}
