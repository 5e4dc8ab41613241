//! Short locator strings attached to every reported check.

pub const GAMMA_BASE: &str = "are gamma matrices satisfying";
pub const GAMMA_EXTENDED: &str = "also satisfy the following relations";
pub const GAMMA_MATRICES: &str = "such a representation (as used";
pub const PAULI: &str = "are the Pauli matrices";
pub const CHIRALITY: &str = "is invertible so";
pub const CONSTRUCTED_GAMMAS: &str = "satisfy the anti-commutation relations";
pub const ODD_DIMENSION: &str = "Assuming that d is odd";
pub const SIGNATURE: &str = "with signature";

pub const RELATION_TABLE: &str = "the complete set of commutation";
pub const HARMONIC_OPERATORS: &str = "we obtain the following operators";
pub const HARMONIC_RELATIONS: &str = "relations between these operators that";
pub const DERIVATION: &str = "by using the derivation property";
pub const SCHRODINGER_LIKE: &str = "corresponding Schrödinger-like Hamiltonian is";
pub const BRACKET_B_BDAG: &str = "including the relation for";
pub const IDEMPOTENT: &str = "it is nearly idempotent";
pub const SIMPLIFY: &str = "can simplify this expression";

pub const CLOSES: &str = "closes to form a colour";
pub const SUBSPACE: &str = "is a subspace of the";
pub const TRIVIAL_ALGEBRA: &str = "is somewhat trivial because";
pub const DEFINE_L: &str = "To this end, define";
pub const COLOUR_DEFINITIONS: &str = "more general definitions of colour";

pub const COUPLED_ODE: &str = "we obtain a coupled ODE";
pub const ODE_CONSTANTS: &str = "for some constants";
pub const FOUR_OPERATORS: &str = "four linearly independent operators";
pub const PARITY_ACTION: &str = "acts the same as the parity";
pub const ZERO_OPERATOR: &str = "then we obtain the zero";

pub const IS_SOLUTION: &str = "is indeed a solution";
pub const STILL_EIGENVECTOR: &str = "is still an eigenvector";
pub const SIMULTANEOUS: &str = "finding the simultaneous eigenstates";
pub const ORTHONORMAL: &str = "eigenstates ψ_k are orthonormal";

pub const ANGULAR_FREQUENCY: &str = "is the angular frequency";
pub const VACUUM: &str = "a vacuum state satisfying";
pub const CONTAINED_SPECTRUM: &str = "is contained in the spectrum";
pub const EXACT_SPECTRUM: &str = "is exactly the spectrum of";
pub const BLOCK_EXAMPLE: &str = "E is an eigenvalue of the Schrödinger Hamiltonian";
pub const NO_BOUNDED_INVERSE: &str = "has no everywhere-defined bounded inverse";
