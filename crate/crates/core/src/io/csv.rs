//! Comma-separated tables: a header row of object names after an empty
//! corner cell, then one `attribute,0/1,...` row per attribute.

use crate::context::FormalContext;
use crate::error::{Error, Result};

pub fn parse_csv(text: &str) -> Result<FormalContext> {
    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(r) => r.map_err(|e| csv_error(&e))?,
        None => return Err(Error::parse(1, "missing header row")),
    };
    let objects: Vec<String> = header.iter().skip(1).map(|s| s.trim().to_string()).collect();
    let mut attributes = Vec::new();
    let mut incidence = Vec::new();
    for record in records {
        let record = record.map_err(|e| csv_error(&e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != objects.len() + 1 {
            return Err(Error::parse(
                line,
                format!("expected {} cells, found {}", objects.len() + 1, record.len()),
            ));
        }
        attributes.push(record[0].trim().to_string());
        let row = record
            .iter()
            .skip(1)
            .map(|cell| match cell.trim() {
                "1" => Ok(true),
                "0" => Ok(false),
                other => Err(Error::parse(line, format!("cell `{other}` is not 0 or 1"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        incidence.push(row);
    }
    FormalContext::new(attributes, objects, incidence)
}

fn csv_error(e: &::csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::parse(line, e.to_string())
}

pub fn serialize_csv(ctx: &FormalContext) -> String {
    let mut writer = ::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let header = std::iter::once("").chain(ctx.objects().iter().map(String::as_str));
    writer.write_record(header).expect("writing to memory");
    for (a, name) in ctx.attributes().iter().enumerate() {
        let cells = (0..ctx.num_objects()).map(|b| if ctx.incident(a, b) { "1" } else { "0" });
        writer
            .write_record(std::iter::once(name.as_str()).chain(cells))
            .expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("flushing to memory")).expect("utf-8 input")
}
