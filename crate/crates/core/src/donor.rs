// SPDX-License-Identifier: Apache-2.0

//! Choosing the donor record whose code is injected into a host.

use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DonorError {
    #[error("a donor needs a split of at least 2 records, got {len}")]
    SplitTooSmall { len: usize },
    #[error("host position {exclude} is outside a split of {len} records")]
    HostOutOfRange { exclude: usize, len: usize },
}

/// Uniformly pick a position in `0..len` other than `exclude`.
///
/// Consumes exactly one draw from `rng`, so a sequence of calls in host order
/// yields the same donors no matter how the hosts are processed afterwards.
pub fn sample_donor_position<R: Rng + ?Sized>(len: usize, exclude: usize, rng: &mut R) -> Result<usize, DonorError> {
    if len < 2 {
        return Err(DonorError::SplitTooSmall { len });
    }
    if exclude >= len {
        return Err(DonorError::HostOutOfRange { exclude, len });
    }
    let k = rng.random_range(0..len - 1);
    Ok(if k >= exclude { k + 1 } else { k })
}

/// Pick a donor from `split` that is not `split[exclude]`.
pub fn sample_donor<'a, T, R: Rng + ?Sized>(split: &'a [T], exclude: usize, rng: &mut R) -> Result<&'a T, DonorError> {
    sample_donor_position(split.len(), exclude, rng).map(|i| &split[i])
}
