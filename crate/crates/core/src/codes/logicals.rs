use crate::pauli_algebra::{CheckMatrix, PauliVector};

/// Logical representatives by kernel-modulo-rowspace elimination followed by
/// symplectic Gram–Schmidt.
///
/// Returns `2k` operators ordered `[X̄₁ … X̄ₖ, Z̄₁ … Z̄ₖ]` with
/// `⟨X̄ᵢ, Z̄ⱼ⟩ = δᵢⱼ` and all other pairs commuting.
pub fn compute_logicals(check: &CheckMatrix) -> Vec<PauliVector> {
    // v commutes with every row  <=>  (S̃Λ) vᵀ = 0
    let normalizer = check.parity_matrix().kernel();
    let mut span = check.rowspace_basis();
    let mut pool: Vec<PauliVector> = normalizer
        .into_iter()
        .filter(|v| span.insert(v.clone()))
        .map(|v| PauliVector::from_symplectic(&v).expect("2n bits"))
        .collect();

    let mut xs = Vec::new();
    let mut zs = Vec::new();
    while !pool.is_empty() {
        let a = pool.remove(0);
        let Some(pos) = pool.iter().position(|b| a.anticommutes(b)) else {
            // only reachable for an invalid (non-commuting) check matrix
            break;
        };
        let b = pool.remove(pos);
        for c in pool.iter_mut() {
            if c.anticommutes(&b) {
                c.mul_assign(&a);
            }
            if c.anticommutes(&a) {
                c.mul_assign(&b);
            }
        }
        xs.push(a);
        zs.push(b);
    }
    xs.extend(zs);
    xs
}
