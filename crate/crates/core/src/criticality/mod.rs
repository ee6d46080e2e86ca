//! Central-charge estimation from entropy profiles and scans along
//! parameter lines.

mod fit;
mod kac;
mod scan;

pub use crate::entanglement::EntropyProfile;
pub use fit::{
    critical_signature, estimate_central_charge, estimate_central_charge_in, fit_error, fit_error_in,
    midpoint_entropy, CEstimate, CriticalSignature, FitWindow,
};
pub use kac::{kac_charge, kac_charges, kac_weight, kac_weights, snap_to_kac, KacClass, KacSnap, KacTable};
pub use scan::{
    find_maxima, linspace, scan_line, scan_specs, CriticalCandidate, LineScan, ParameterPath, ScanParameter, ScanPoint,
};
