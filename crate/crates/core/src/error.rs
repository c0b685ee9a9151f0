use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quaternion has norm {norm:e}, below tolerance")]
    ZeroQuaternion { norm: f64 },

    #[error("Plücker vector is zero")]
    ZeroVector,

    #[error("point is not projectively real")]
    NotProjectivelyReal,

    #[error("point lies on the Klein quadric; tau is undefined")]
    IsotropicPoint,

    #[error("non-real anisotropic point with tau = {tau} >= 1 cannot occur in signature (1,5)")]
    UnclassifiablePoint { tau: f64 },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("base point {re} + {im}i is real; interpolation needs a non-real point")]
    RealBasePoint { re: f64, im: f64 },

    #[error("polynomial is constant")]
    ConstantPolynomial,

    #[error("real-linear map is zero")]
    ZeroMap,

    #[error("no generic witness found after {draws} random draws")]
    WitnessSearchExhausted { draws: usize },

    #[error("GL(2,H) element is singular")]
    SingularElement,

    #[error("alpha + beta*a vanishes; transformation is not admissible for this constant")]
    NotAdmissibleForConstant,

    #[error("element has beta != 0 and is not globally admissible")]
    NotLowerTriangular,
}

pub type Result<T> = std::result::Result<T, Error>;
