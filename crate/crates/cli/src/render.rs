use adjoint_blocks::adjoint::AdjointReport;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Md,
    Latex,
    Json,
}

/// One table row with Jordan types in ascending compact form.
#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub ell: usize,
    pub decomposition: String,
    #[serde(rename = "type_V")]
    pub type_v: String,
    pub type_gsc: String,
    pub type_derived: String,
    pub type_gad: String,
    pub alpha: u32,
    pub beta: Option<u32>,
    pub dim_cent_sc: usize,
    pub dim_cent_ad: usize,
}

pub const CSV_HEADER: [&str; 10] = [
    "ell",
    "decomposition",
    "type_V",
    "type_gsc",
    "type_derived",
    "type_gad",
    "alpha",
    "beta",
    "dim_cent_sc",
    "dim_cent_ad",
];

impl From<&AdjointReport> for Row {
    fn from(r: &AdjointReport) -> Self {
        Row {
            ell: r.ell,
            decomposition: r.class.to_string(),
            type_v: r.type_v.to_compact(),
            type_gsc: r.type_gsc.to_compact(),
            type_derived: r.type_derived.to_compact(),
            type_gad: r.type_gad.to_compact(),
            alpha: r.alpha,
            beta: r.beta,
            dim_cent_sc: r.dim_cent_sc,
            dim_cent_ad: r.dim_cent_ad,
        }
    }
}

impl Row {
    fn beta_or(&self, missing: &str) -> String {
        self.beta.map_or(missing.to_string(), |b| b.to_string())
    }

    fn cells(&self) -> [String; 10] {
        [
            self.ell.to_string(),
            self.decomposition.clone(),
            self.type_v.clone(),
            self.type_gsc.clone(),
            self.type_derived.clone(),
            self.type_gad.clone(),
            self.alpha.to_string(),
            self.beta_or(""),
            self.dim_cent_sc.to_string(),
            self.dim_cent_ad.to_string(),
        ]
    }
}

/// `1^3,2,4^4` as `1^3, 2, 4^4`.
fn spaced(compact: &str) -> String {
    compact.replace(',', ", ")
}

/// `1^3,2,4^4` as `1^{3}, 2, 4^{4}`.
fn latex_type(compact: &str) -> String {
    compact
        .split(',')
        .map(|t| match t.split_once('^') {
            Some((s, m)) => format!("{s}^{{{m}}}"),
            None => t.to_string(),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn latex_decomp(d: &str) -> String {
    let mut out = String::new();
    let mut chars = d.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '^' => {
                let mut digits = String::new();
                while let Some(&n) = chars.peek().filter(|n| n.is_ascii_digit()) {
                    digits.push(n);
                    chars.next();
                }
                out.push_str(&format!("^{{{digits}}}"));
            }
            _ => out.push(c),
        }
    }
    out
}

pub fn render_text(r: &AdjointReport) -> String {
    let row = Row::from(r);
    format!(
        "{} ({}, ell={})\nV: {}\n{} | {} | {} | α={} β={}\ndim centralizer: g_sc {}, g_ad {}\n",
        row.decomposition,
        r.kind,
        row.ell,
        row.type_v,
        row.type_gsc,
        row.type_derived,
        row.type_gad,
        row.alpha,
        row.beta_or("-"),
        row.dim_cent_sc,
        row.dim_cent_ad,
    )
}

pub fn render(rows: &[Row], format: Format) -> Result<String, Box<dyn std::error::Error>> {
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&format!(
                    "{:>2}  {:<28} {} | {} | {} | α={} β={}\n",
                    r.ell,
                    r.decomposition,
                    r.type_gsc,
                    r.type_derived,
                    r.type_gad,
                    r.alpha,
                    r.beta_or("-")
                ));
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in rows {
                w.write_record(r.cells())?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Md => {
            let mut out = format!("| {} |\n", CSV_HEADER.join(" | "));
            out.push_str(&format!("|{}\n", "---|".repeat(CSV_HEADER.len())));
            for r in rows {
                let mut cells = r.cells();
                for c in &mut cells[2..6] {
                    *c = spaced(c);
                }
                out.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
            out
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{lllllll}\n\\hline\n");
            out.push_str(
                "$\\ell$ & decomposition & $\\mathfrak{g}_{sc}$ & $[\\mathfrak{g}_{ad}, \\mathfrak{g}_{ad}]$ \
                 & $\\mathfrak{g}_{ad}$ & $\\alpha$ & $\\beta$ \\\\ \\hline\n",
            );
            for r in rows {
                out.push_str(&format!(
                    "${}$ & ${}$ & $ {} $ & $ {} $ & $ {} $ & ${}$ & ${}$ \\\\\n",
                    r.ell,
                    latex_decomp(&r.decomposition),
                    latex_type(&r.type_gsc),
                    latex_type(&r.type_derived),
                    latex_type(&r.type_gad),
                    r.alpha,
                    r.beta_or("-"),
                ));
            }
            out.push_str("\\hline\n\\end{tabular}\n");
            out
        }
        Format::Json => serde_json::to_string_pretty(rows)? + "\n",
    })
}
