//! Universal measurings, duals and the measuring tensor.

mod classify;
mod graph;
mod tensor;

pub use classify::{classify_universal, dual_algebra, dual_coalgebra_classified, Classification};
pub use graph::{measuring_graph, GraphNode, GraphView, MeasuringGraph};
pub use tensor::{measuring_tensor, CriticalPair, MeasuringTensor, TensorClass, TensorElem, TensorView};
