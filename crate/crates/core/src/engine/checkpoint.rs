use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::partial::PartialAlgebra;
use crate::config::Shape;

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CheckpointError {
    #[error("checkpoint version {found}, expected {CHECKPOINT_VERSION}")]
    Version { found: u32 },
    #[error("corrupt checkpoint: {0}")]
    Corrupt(String),
    #[error("checkpoint holds an empty state")]
    Empty,
    #[error("checkpoint belongs to a different shape")]
    ShapeMismatch,
}

/// Saved construction state, tagged with the shape it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    /// Hex SHA-256 of the shape record.
    pub shape_ref: String,
    pub state: PartialAlgebra,
}

pub fn shape_ref(shape: &Shape) -> String {
    let rec = serde_json::to_vec(&shape.to_record()).expect("shape record serializes");
    hex::encode(Sha256::digest(rec))
}

pub fn checkpoint_save(shape: &Shape, state: &PartialAlgebra) -> Vec<u8> {
    let cp = Checkpoint { version: CHECKPOINT_VERSION, shape_ref: shape_ref(shape), state: state.clone() };
    serde_json::to_vec(&cp).expect("checkpoint serializes")
}

pub fn checkpoint_load(bytes: &[u8]) -> Result<Checkpoint, CheckpointError> {
    #[derive(Deserialize)]
    struct Header {
        version: u32,
    }
    let head: Header = serde_json::from_slice(bytes).map_err(|e| CheckpointError::Corrupt(e.to_string()))?;
    if head.version != CHECKPOINT_VERSION {
        return Err(CheckpointError::Version { found: head.version });
    }
    let cp: Checkpoint = serde_json::from_slice(bytes).map_err(|e| CheckpointError::Corrupt(e.to_string()))?;
    let st = &cp.state;
    if st.dim == 0 || st.axes.is_empty() {
        return Err(CheckpointError::Empty);
    }
    let consistent = st.known <= st.dim
        && st.table.len() == st.known * (st.known + 1) / 2
        && st.provenance.len() == st.dim
        && st.gen_matrices.len() == st.gen_elems.len()
        && st.gen_matrices.iter().all(|m| m.len() == st.dim)
        && st.table.iter().chain(&st.axes).chain(st.gen_matrices.iter().flatten()).all(|v| v.within(st.dim));
    if !consistent {
        return Err(CheckpointError::Corrupt("inconsistent sizes".into()));
    }
    Ok(cp)
}
