use serde_json::{Map, Value};

/// Key/value report printed either as aligned text or as one JSON object.
#[derive(Default)]
pub struct Report {
    /// Printed verbatim before the aligned rows in text mode.
    head: Option<String>,
    rows: Vec<(String, String, Value)>,
    /// Free-form lines printed after the aligned rows in text mode.
    tail: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn headline(&mut self, s: impl Into<String>) -> &mut Self {
        self.head = Some(s.into());
        self
    }

    pub fn row(&mut self, key: &str, text: impl Into<String>, json: impl Into<Value>) -> &mut Self {
        self.rows.push((key.to_string(), text.into(), json.into()));
        self
    }

    pub fn count(&mut self, key: &str, n: impl ToString + Into<Value> + Copy) -> &mut Self {
        let text = n.to_string();
        self.row(key, text, n)
    }

    pub fn flag(&mut self, key: &str, b: bool) -> &mut Self {
        self.row(key, yes_no(b), b)
    }

    pub fn list(&mut self, key: &str, xs: &[usize]) -> &mut Self {
        let text = join(xs.iter());
        self.row(key, text, xs.to_vec())
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.tail.push(s.into());
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut obj = Map::new();
            for (k, _, v) in &self.rows {
                obj.insert(k.clone(), v.clone());
            }
            return format!("{}\n", Value::Object(obj));
        }
        let width = self.rows.iter().map(|(k, _, _)| k.len() + 1).max().unwrap_or(0);
        let mut out = String::new();
        if let Some(h) = &self.head {
            out.push_str(h);
            out.push('\n');
        }
        for (k, t, _) in &self.rows {
            let key = format!("{k}:");
            out.push_str(&format!("{key:<width$} {t}\n"));
        }
        for l in &self.tail {
            out.push_str(l);
            out.push('\n');
        }
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn join<T: ToString>(xs: impl Iterator<Item = T>) -> String {
    xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
