//! Pisinger-style knapsack files: each block starts with a name line,
//! followed by `n <count>`, `c <capacity>`, optional `z <optimum>` and
//! `time <t>` headers, then `<id>,<profit>,<weight>,<x>` item lines; blocks
//! are separated by lines of hyphens.

use crate::knapsack::{Item, KnapsackError, KnapsackInstance};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PisingerError {
    #[error("block `{0}`: declared {1} items but found {2}")]
    CountMismatch(String, usize, usize),
    #[error("block `{0}`: item line `{1}` malformed")]
    MalformedItem(String, String),
    #[error("block `{0}`: missing `{1}` header")]
    MissingHeader(String, &'static str),
    #[error("block `{0}`: {1}")]
    Item(String, KnapsackError),
}

pub fn parse_pisinger(text: &str) -> Result<Vec<KnapsackInstance>, PisingerError> {
    let mut instances = Vec::new();
    let mut lines = text.lines();
    while let Some(name) = lines.find(|l| !l.trim().is_empty() && !is_separator(l)) {
        let name = name.trim().to_string();
        let mut declared: Option<usize> = None;
        let mut capacity: Option<u64> = None;
        let mut optimum: Option<u64> = None;
        let mut items: Vec<Item> = Vec::new();
        for line in lines.by_ref() {
            let line = line.trim();
            if line.is_empty() || is_separator(line) {
                break;
            }
            if let Some(rest) = line.strip_prefix("n ") {
                declared = rest.trim().parse().ok();
            } else if let Some(rest) = line.strip_prefix("c ") {
                capacity = rest.trim().parse().ok();
            } else if let Some(rest) = line.strip_prefix("z ") {
                optimum = rest.trim().parse().ok();
            } else if line.starts_with("time ") {
                continue;
            } else {
                let fields: Vec<&str> = line.split(',').collect();
                let parsed = (fields.len() >= 3)
                    .then(|| {
                        Some(Item {
                            profit: fields[1].trim().parse().ok()?,
                            weight: fields[2].trim().parse().ok()?,
                        })
                    })
                    .flatten();
                match parsed {
                    Some(item) => items.push(item),
                    None => {
                        return Err(PisingerError::MalformedItem(name, line.to_string()))
                    }
                }
            }
        }
        let declared = declared.ok_or_else(|| PisingerError::MissingHeader(name.clone(), "n"))?;
        let capacity = capacity.ok_or_else(|| PisingerError::MissingHeader(name.clone(), "c"))?;
        if declared != items.len() {
            return Err(PisingerError::CountMismatch(name, declared, items.len()));
        }
        let mut instance = KnapsackInstance::new(capacity, &items)
            .map_err(|e| PisingerError::Item(name.clone(), e))?;
        instance.name = Some(name);
        instance.published_optimum = optimum;
        instances.push(instance);
    }
    Ok(instances)
}

fn is_separator(line: &str) -> bool {
    let t = line.trim();
    !t.is_empty() && t.chars().all(|c| c == '-')
}

pub fn serialise_pisinger(instances: &[KnapsackInstance]) -> String {
    let mut out = String::new();
    for inst in instances {
        out.push_str(inst.name.as_deref().unwrap_or("instance"));
        out.push('\n');
        out.push_str(&format!("n {}\n", inst.items.len()));
        out.push_str(&format!("c {}\n", inst.capacity));
        if let Some(z) = inst.published_optimum {
            out.push_str(&format!("z {z}\n"));
        }
        for (i, item) in inst.items.iter().enumerate() {
            out.push_str(&format!("{},{},{},0\n", i + 1, item.profit, item.weight));
        }
        out.push_str("-----\n\n");
    }
    out
}
