//! Grid serialization: CSV, JSON and an ASCII picture.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grundy::GrundyGrid;
use crate::ruleset::RuleSet;

#[derive(Serialize, Deserialize)]
struct GridJson {
    rule: RuleSet,
    width: u32,
    height: u32,
    values: Vec<Vec<u32>>,
}

impl GrundyGrid {
    /// `x,y,value` rows sorted by `y`, then `x`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,value")?;
        for (p, v) in self.cells() {
            writeln!(out, "{},{},{}", p.x, p.y, v)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = GridJson {
            rule: self.rule(),
            width: self.width(),
            height: self.height(),
            values: (0..self.height()).map(|y| self.row(y).to_vec()).collect(),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<GrundyGrid> {
        let doc: GridJson = serde_json::from_str(text)?;
        if doc.values.len() != doc.height as usize {
            return Err(Error::MalformedGrid(format!(
                "{} rows for height {}",
                doc.values.len(),
                doc.height
            )));
        }
        if let Some(bad) = doc.values.iter().position(|r| r.len() != doc.width as usize) {
            return Err(Error::MalformedGrid(format!("row {bad} does not have width {}", doc.width)));
        }
        let values = doc.values.into_iter().flatten().collect();
        GrundyGrid::from_parts(doc.rule, doc.width, doc.height, values)
    }

    /// One character per cell, digits for values below 10 and `#` above;
    /// the origin is at the bottom-left.
    pub fn render_ascii(&self) -> String {
        let mut s = String::with_capacity((self.width() as usize + 1) * self.height() as usize);
        for y in (0..self.height()).rev() {
            s.extend(self.row(y).iter().map(|&v| char::from_digit(v, 10).unwrap_or('#')));
            s.push('\n');
        }
        s
    }
}
