//! CSV with `#` comment lines ahead of the header row.

use anyhow::Result;

pub struct Table {
    comments: Vec<String>,
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    /// `schema` names the row layout; it goes in the first comment line with the library version.
    pub fn new(schema: &str, header: &[&str]) -> Result<Self> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header)?;
        Ok(Table { comments: vec![format!("setfam {} schema={schema}/1", crate::VERSION)], writer })
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn row<I, T>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u8]>,
    {
        Ok(self.writer.write_record(fields)?)
    }

    pub fn finish(self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        for c in &self.comments {
            out.extend_from_slice(b"# ");
            out.extend_from_slice(c.as_bytes());
            out.push(b'\n');
        }
        out.extend(self.writer.into_inner().map_err(|e| e.into_error())?);
        Ok(out)
    }
}

/// Read rows of a table written by [`Table`], skipping comments.
pub fn read(bytes: &[u8]) -> Result<(csv::StringRecord, Vec<csv::StringRecord>)> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(bytes);
    let header = r.headers()?.clone();
    let rows = r.records().collect::<Result<Vec<_>, _>>()?;
    Ok((header, rows))
}
