//! Dataset loading, abstraction orchestration, synthetic generation, and
//! reporting behind the `ftpm` binary. Exposed as a library so integration
//! tests can drive the same code paths in-process.

pub mod native;
pub mod prepare;
pub mod report;
pub mod run;
pub mod synth;
pub mod ucr;
