use crate::pauli_algebra::PauliVector;

use super::BpError;

/// One step of the trailing-run-length update: a qubit whose hard decision
/// did not change gains one, a changed one restarts at one.
pub fn update_reliability_vec(
    previous: &PauliVector,
    current: &PauliVector,
    ell: &mut [usize],
) -> Result<(), BpError> {
    let n = ell.len();
    if previous.n() != n || current.n() != n {
        return Err(BpError::LengthMismatch {
            expected: n,
            found: if previous.n() != n { previous.n() } else { current.n() },
        });
    }
    for (i, l) in ell.iter_mut().enumerate() {
        if previous.get(i) == current.get(i) {
            *l += 1;
        } else {
            *l = 1;
        }
    }
    Ok(())
}
