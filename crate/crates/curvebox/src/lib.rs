//! Curve-box scene-text representation toolkit.
//!
//! A text instance is represented by two polynomial edge curves fitted in a
//! normalized frame plus four pixel-space truncation points; this crate
//! implements the full label pipeline around that representation,
//! independent of any training framework:
//!
//! * [`geometry`] — points, annotation polygons, similarity transforms,
//!   polygon IoU;
//! * [`curvefit`] — the masked polynomial family and its least-squares fit;
//! * [`encoder`] — polygon → curve-box label generation;
//! * [`decoder`] — label → dense contour reconstruction, batched;
//! * [`maps`] — raster supervision labels and the inverse decode path;
//! * [`losses`] — reference loss values (proportional integral, smooth-L1,
//!   Dice, weighted total);
//! * [`metrics`] — IoU matching, precision/recall/H-mean, fitting-ability
//!   sweeps;
//! * [`synth`] — seeded synthetic ribbon corpora;
//! * [`io`] — corpus formats, the `EDGT` tensor container, SVG overlays.
//!
//! See the crate examples for runnable walk-throughs of each capability.

pub mod curvefit;
pub mod decoder;
pub mod encoder;
pub mod error;
pub mod geometry;
pub mod io;
pub mod losses;
pub mod maps;
pub mod metrics;
pub mod synth;

pub use curvefit::{CurveParams, ParamMask};
pub use decoder::{Reconstruction, ReconstructionConfig};
pub use encoder::{CurveBoxLabel, EdgePair, TruncationPoints};
pub use error::{Error, Result};
pub use geometry::{Point2, SimilarityTransform, TextPolygon};
pub use maps::{DecodeConfig, LabelMaps, MapRenderConfig};
pub use metrics::{FitReport, MatchResult};
