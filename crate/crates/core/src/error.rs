use thiserror::Error;

use crate::vector::Vec3;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid quantum numbers n={n}, l={l}, m={m}: need 0 <= l <= n-1 and -l <= m <= l")]
    InvalidQuantumNumbers { n: i32, l: i32, m: i32 },

    #[error("associated Legendre argument out of range: l={l}, m={m}, x={x}")]
    LegendreDomain { l: i32, m: i32, x: f64 },

    #[error("m = 0 electron is stationary; orbit geometry is undefined")]
    StationaryElectron,

    #[error("singular evaluation: {0}")]
    Singularity(&'static str),

    #[error("evaluation on a node of the wavefunction at ({x:.6e}, {y:.6e}, {z:.6e})")]
    Node { x: f64, y: f64, z: f64 },

    #[error("integration step aborted at t = {t:.6e} s, point {point}: {source}")]
    StepAborted {
        t: f64,
        point: Vec3,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn node(p: Vec3) -> Self {
        Error::Node {
            x: p.x,
            y: p.y,
            z: p.z,
        }
    }
}
