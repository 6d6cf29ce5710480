use thiserror::Error;

/// Errors raised while building or checking finite categorical data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("unknown {kind} id `{id}`")]
    UnknownId { kind: &'static str, id: String },

    #[error("composition not total: `{g}` ∘ `{f}` is composable but undefined")]
    CompositionNotTotal { g: String, f: String },

    #[error("composition defined on non-composable pair `{g}` ∘ `{f}`")]
    CompositionNotComposable { g: String, f: String },

    #[error("`{g}` ∘ `{f}` = `{gf}` has the wrong endpoints")]
    CompositeEndpoints { g: String, f: String, gf: String },

    #[error("identity `{morphism}` of object `{object}` is not an endomorphism of it")]
    IdentityNotEndo { object: String, morphism: String },

    #[error("identity law fails for `{morphism}` ({side} identity)")]
    IdentityLaw { morphism: String, side: &'static str },

    #[error("associativity fails on `{h}` ∘ `{g}` ∘ `{f}`")]
    Associativity { h: String, g: String, f: String },

    #[error("functor law violated: {0}")]
    Functor(String),

    #[error("natural transformation invalid: {0}")]
    NatTrans(String),

    #[error("group law violated: {0}")]
    Group(String),

    #[error("not a groupoid: `{morphism}` is not invertible")]
    NotGroupoid { morphism: String },

    #[error("invalid diagram: {0}")]
    Diagram(String),

    #[error("invalid cone: {0}")]
    Cone(String),

    #[error("adjunction laws fail: {0}")]
    Adjunction(String),

    #[error("missing limit: {0}")]
    MissingLimit(String),

    #[error("missing colimit: {0}")]
    MissingColimit(String),

    #[error("image escapes subcategory at object `{object}`")]
    ImageEscapes { object: String },

    #[error("size guard exceeded while enumerating {what} (limit {limit})")]
    SizeGuard { what: &'static str, limit: u64 },

    #[error("cross-check failed: {0}")]
    Mismatch(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// Indicates a bug in this crate rather than bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
