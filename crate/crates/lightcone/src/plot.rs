//! gnuplot script emission.

use std::fmt::Write;

use crate::sweep::Table;

#[derive(Debug, Clone, Default)]
pub struct PlotStyle {
    pub title: Option<String>,
    /// Written by the script when set; otherwise gnuplot's default terminal.
    pub output_png: Option<String>,
}

/// Solid, dashed, dotted, then repeating.
const DASH_TYPES: [u8; 3] = [1, 2, 3];

fn fmt_value(v: f64) -> String {
    let s = format!("{v}");
    s.trim_end_matches(".0").to_string()
}

/// Standalone gnuplot script with the data inlined, one line style per
/// curve. Rows without a concurrence are left out and counted.
pub fn emit_plot_script(table: &Table, style: &PlotStyle) -> Result<String, String> {
    if table.rows.is_empty() {
        return Err("cannot plot an empty table".into());
    }
    let spec = &table.spec;
    let var = spec.sweep_var;
    let mut s = String::new();
    writeln!(s, "# concurrence, {} channel, swept over {}", spec.channel, var.label()).unwrap();
    let skipped = table.rows.iter().filter(|r| r.concurrence.is_none()).count();
    if skipped > 0 {
        writeln!(s, "# {skipped} error rows omitted").unwrap();
    }
    if let Some(png) = &style.output_png {
        writeln!(s, "set terminal pngcairo size 900,600").unwrap();
        writeln!(s, "set output '{png}'").unwrap();
    }
    if let Some(title) = &style.title {
        writeln!(s, "set title '{title}'").unwrap();
    }
    writeln!(s, "set xlabel '{}'", var.label()).unwrap();
    writeln!(s, "set ylabel 'C'").unwrap();
    writeln!(s, "set yrange [0:1.05]").unwrap();
    writeln!(s, "set key top right").unwrap();

    let mut series = Vec::new();
    for (idx, fixed) in spec.fixed_values.iter().enumerate() {
        let name = format!("$curve{idx}");
        writeln!(s, "{name} << EOD").unwrap();
        for row in table.curve(idx) {
            if let Some(c) = row.concurrence {
                let v = match var {
                    crate::sweep::SweepVar::X => row.x,
                    crate::sweep::SweepVar::Z => row.z,
                };
                writeln!(s, "{v:.16e} {c:.16e}").unwrap();
            }
        }
        writeln!(s, "EOD").unwrap();
        let dt = DASH_TYPES[idx % DASH_TYPES.len()];
        series.push(format!(
            "{name} using 1:2 with lines lw 2 lc 'black' dt {dt} title '{} = {}'",
            var.curve_label(),
            fmt_value(*fixed)
        ));
    }
    writeln!(s, "plot {}", series.join(", \\\n     ")).unwrap();
    Ok(s)
}
