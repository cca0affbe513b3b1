//! Construction, exact spectra and classification of graphs whose nonzero
//! eigenvalues other than the index share one absolute value, together with
//! the energy bounds whose equality cases they are.

pub mod classify;
pub mod energy;
pub mod families;
pub mod graph;
pub mod io;
pub mod iso;
pub mod recipe;
pub mod spectra;
pub mod survey;

pub use classify::{classify, ClassReport, SpectrumPattern};
pub use graph::{Graph, GraphError};
pub use spectra::{exact_spectrum, ExactEigenvalue, ExactSpectrum, FloatSpectrum, Spectrum};
