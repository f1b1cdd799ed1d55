use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn of(pass: bool) -> Verdict {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// `key = value` lines, a verdict line, then optional blocks of sample-file
/// text each introduced by a `# <title>` comment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Report {
    pub fields: Vec<(String, String)>,
    pub verdict: Verdict,
    pub blocks: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report { fields: Vec::new(), verdict: Verdict::Pass, blocks: Vec::new() }
    }

    pub fn field(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn block(&mut self, title: impl Into<String>, body: String) -> &mut Self {
        self.blocks.push((title.into(), body));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }
}

impl Default for Report {
    fn default() -> Self {
        Report::new()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fields {
            writeln!(f, "{k} = {v}")?;
        }
        writeln!(f, "verdict = {}", self.verdict.name())?;
        for (title, body) in &self.blocks {
            writeln!(f, "# {title}")?;
            f.write_str(body)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_fields_then_verdict() {
        let mut r = Report::new();
        r.field("entry", "ii.red").field("points", 3);
        r.verdict = Verdict::Fail;
        assert_eq!(r.to_string(), "entry = ii.red\npoints = 3\nverdict = fail\n");
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.get("points"), Some("3"));
    }
}
