use super::{css_check, CodeError, StabilizerCode};

/// Unrotated planar surface code, `[[d² + (d−1)², 1]]`.
pub fn surface_code(d: usize) -> Result<StabilizerCode, CodeError> {
    if d < 2 {
        return Err(CodeError::InvalidDistance {
            family: "surface",
            d,
            requirement: "d >= 2",
        });
    }
    let size = 2 * d - 1;
    let mut index = vec![usize::MAX; size * size];
    let mut n = 0;
    for i in 0..size {
        for j in 0..size {
            if (i + j) % 2 == 0 {
                index[i * size + j] = n;
                n += 1;
            }
        }
    }
    let neighbors = |i: usize, j: usize| {
        let mut s = Vec::with_capacity(4);
        if i > 0 {
            s.push(index[(i - 1) * size + j]);
        }
        if j > 0 {
            s.push(index[i * size + j - 1]);
        }
        if j + 1 < size {
            s.push(index[i * size + j + 1]);
        }
        if i + 1 < size {
            s.push(index[(i + 1) * size + j]);
        }
        s
    };
    let mut xs = Vec::new();
    let mut zs = Vec::new();
    for i in 0..size {
        for j in 0..size {
            if (i + j) % 2 == 1 {
                if i % 2 == 1 {
                    xs.push(neighbors(i, j));
                } else {
                    zs.push(neighbors(i, j));
                }
            }
        }
    }
    StabilizerCode::new(format!("surface_d{d}"), 1, Some(d), css_check(n, &xs, &zs))
}
