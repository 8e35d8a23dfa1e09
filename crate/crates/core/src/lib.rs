//! Exact finite group engine for pronormality questions in PSL(2,q), Sz(q)
//! and J1.

pub mod builders;
pub mod error;
pub mod gf;
pub mod lattice;
pub mod pronormal;
pub mod group;
pub mod identities;
pub mod subgroup;
pub mod verify;

pub use builders::{
    build_psl2, build_sz, fingerprint, load_j1, Family, GroupSpec, IsoFingerprint, IsoLabel, Regime,
    SuzukiModel,
};
pub use error::{Error, Result};
pub use gf::{field_of_order, make_field, FieldCtx, FieldElement, Modulus};
pub use group::{Domain, ElemId, FiniteGroup, GroupElement, Subgroup};
pub use lattice::{PrnFamily, Scope};
pub use pronormal::{classify, is_pronormal_def, is_pronormal_rose, Method, PronormalVerdict, Verdict, Witness};
pub use subgroup::{subgroup_classes, EnumMode, SubgroupClass};
pub use verify::{
    run_verification, ClassificationReport, OutputFormat, Suite, TargetConfig, TargetMode, VerifyConfig,
};
