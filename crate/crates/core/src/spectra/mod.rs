//! Symmetric sequences, Day convolution, `Sym(S)` and symmetric
//! `S`-spectra over chain complexes, truncated at a finite level.

pub mod perm;
mod seq;
mod spectrum;
mod sym;

pub use seq::{
    day_braiding, day_rank_formula, day_tensor, equivariance_failures, exterior_shift_iso, is_equivariant,
    iterated_shift_iso, seq_shift_down, seq_shift_up, shift_counit, shift_down_map, shift_unit, shift_up_map, ShiftIso,
    SymSeq,
};
pub use spectrum::{
    adjoint_assembly, is_weak_omega_spectrum, iterated_suspension, make_spectrum, omega_infty, shift_spectrum,
    sigma_infty, sigma_infty_map, spectrum_map_failures, spectrum_shift_up, spectrum_tensor_complex, suspension_map,
    sym_spectrum, validate_spectrum, zero_spectrum, EquivarianceFailure, Factor, OmegaReport, Spectrum, SpectrumReport,
};
pub use sym::{
    extend_to_monoid_map, monoid_map_failures, sym_monoid, validate_module, validate_ring_spectrum, zero_module,
    LawReport, ModuleSpectrumData, RingSpectrumData, TensorPowers,
};

#[cfg(test)]
mod tests;
