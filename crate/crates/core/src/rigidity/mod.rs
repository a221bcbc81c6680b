//! Rigidity deciders, equality cases, witnesses and the gallery.

mod decide;
mod equality;
pub mod gallery;

pub use decide::*;
pub use equality::{check_equality_case, EqualityReport};
pub use gallery::{gallery, GalleryEntry, GALLERY_NAMES};
