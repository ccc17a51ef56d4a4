//! `key=value,key=value` descriptors for fields and rings.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub(crate) struct KeyValues(BTreeMap<String, String>);

impl KeyValues {
    pub(crate) fn parse(s: &str, allowed: &[&str]) -> Result<KeyValues> {
        let mut map = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let key = key.trim();
            if !allowed.contains(&key) {
                return Err(Error::Parse(format!("unknown key {key:?} in {s:?}")));
            }
            if map.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(Error::Parse(format!("duplicate key {key:?} in {s:?}")));
            }
        }
        Ok(KeyValues(map))
    }

    pub(crate) fn required_u32(&self, key: &str) -> Result<u32> {
        let raw = self
            .0
            .get(key)
            .ok_or_else(|| Error::Parse(format!("missing {key}=")))?;
        raw.parse()
            .map_err(|e| Error::Parse(format!("{key}={raw}: {e}")))
    }

    pub(crate) fn optional_hex(&self, key: &str) -> Result<Option<u64>> {
        self.0
            .get(key)
            .map(|raw| {
                let digits = raw
                    .strip_prefix("0x")
                    .or_else(|| raw.strip_prefix("0X"))
                    .unwrap_or(raw);
                u64::from_str_radix(digits, 16)
                    .map_err(|e| Error::Parse(format!("{key}={raw}: {e}")))
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_garbage() {
        assert!(KeyValues::parse("n=3,foo=1", &["n"]).is_err());
        assert!(KeyValues::parse("n", &["n"]).is_err());
        assert!(KeyValues::parse("n=3,n=4", &["n"]).is_err());
        let kv = KeyValues::parse("n=3, poly=0x1f", &["n", "poly"]).unwrap();
        assert_eq!(kv.required_u32("n").unwrap(), 3);
        assert_eq!(kv.optional_hex("poly").unwrap(), Some(0x1f));
    }
}
