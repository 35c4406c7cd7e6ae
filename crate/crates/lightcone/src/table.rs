//! CSV emission.

use std::io::Write;

use crate::sweep::{cutoff_flag, Row, Table};

pub const HEADER: [&str; 13] = [
    "channel",
    "x",
    "z",
    "omega_t",
    "concurrence",
    "amp1_re",
    "amp1_im",
    "amp2_re",
    "amp2_im",
    "on_cone_flag",
    "cutoff_sensitivity",
    "cutoff_flag",
    "error",
];

/// Shortest exact form would also round-trip, but a fixed 17-significant-
/// digit layout keeps columns diffable.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn record(row: &Row) -> [String; 13] {
    [
        row.channel.as_str().to_string(),
        num(row.x),
        num(row.z),
        num(row.omega_t),
        opt(row.concurrence),
        opt(row.amp1.map(|c| c.re)),
        opt(row.amp1.map(|c| c.im)),
        opt(row.amp2.map(|c| c.re)),
        opt(row.amp2.map(|c| c.im)),
        u8::from(row.on_cone).to_string(),
        opt(row.cutoff_sensitivity),
        u8::from(cutoff_flag(row)).to_string(),
        row.error.clone().unwrap_or_default(),
    ]
}

pub fn write_csv<W: Write>(table: &Table, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in &table.rows {
        w.write_record(record(row))?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(table: &Table) -> String {
    let mut buf = Vec::new();
    write_csv(table, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}
