//! Train track maps of finite graphs and the laminations they carry.

pub mod error;
pub mod gates;
pub mod graph;
pub mod map;
pub mod lamination;
pub mod nielsen;
pub mod spectral;

pub use error::{Error, Result};
pub use gates::{is_train_track, GateStructure, TurnTable};
pub use graph::{Dart, EdgePath, Graph, Turn};
pub use map::{DerivativeMap, GraphSelfMap};
pub use spectral::{PfData, TransitionMatrix};
