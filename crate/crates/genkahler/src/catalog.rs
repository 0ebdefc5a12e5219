//! The catalog of verifiable checks with their provenance anchors.
