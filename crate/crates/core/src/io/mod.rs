pub mod documents;
pub mod ingest;
pub mod svg;
