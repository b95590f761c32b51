//! Signatures, the gadget lemmas, the composition argument, and the full
//! `chi = 8` certificate for the two-floor arrangement.

mod certificate;
mod claims;
mod composition;
mod signature;

pub use certificate::{
    certify_z, color_by_floors, Certificate, CertifyOptions, Conclusion, FloorRecord, UpperRecord, COLORS_PER_FLOOR,
};
pub use claims::{check_claim1, check_claim2, Claim1Report, Claim2Report, CLAIM2_REGION_CAP};
pub use composition::{
    check_structure, full_overlap, verify_composition, LowerBound, LowerBoundCertificate, StructureReport,
    REQUIRED_BOTTOM_COPIES,
};
pub use signature::{signature, signature_geq, Signature, CLAIM1_THRESHOLDS};
