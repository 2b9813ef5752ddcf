use anyhow::Result;
use serde::Serialize;

/// Bumped whenever a column or key changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

pub fn csv<S: Serialize>(rows: &[S]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(true)
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(w.into_inner()?)
}

/// Pretty JSON with a trailing newline; key order follows struct field order.
pub fn json<S: Serialize>(value: &S) -> Result<Vec<u8>> {
    let mut buf = serde_json::to_vec_pretty(value)?;
    buf.push(b'\n');
    Ok(buf)
}

/// JSON document wrapper carrying the schema tag.
#[derive(Serialize)]
pub struct Document<'a, T: Serialize> {
    pub schema_version: u32,
    pub kind: &'a str,
    #[serde(flatten)]
    pub body: T,
}

pub fn document<T: Serialize>(kind: &str, body: T) -> Result<Vec<u8>> {
    json(&Document {
        schema_version: SCHEMA_VERSION,
        kind,
        body,
    })
}
