//! Small structural validator for the subset of JSON Schema used by
//! report-v1: types, required properties, items, enums, consts, refs into
//! `#/definitions`, and numeric bounds.

use serde_json::Value;

pub fn load_schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schemas/report-v1.json");
    let text = std::fs::read_to_string(path).expect("schema file is shipped in the repo");
    serde_json::from_str(&text).expect("schema parses")
}

pub fn validate(root: &Value, doc: &Value) -> Result<(), String> {
    check(root, root, doc, "$")
}

pub fn validate_against_definition(root: &Value, name: &str, doc: &Value) -> Result<(), String> {
    let def = &root["definitions"][name];
    if def.is_null() {
        return Err(format!("no definition named {name}"));
    }
    check(root, def, doc, "$")
}

fn resolve<'a>(root: &'a Value, schema: &'a Value) -> &'a Value {
    match schema.get("$ref").and_then(|r| r.as_str()) {
        Some(r) => {
            let name = r.trim_start_matches("#/definitions/");
            &root["definitions"][name]
        }
        None => schema,
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn check(root: &Value, schema: &Value, doc: &Value, path: &str) -> Result<(), String> {
    let schema = resolve(root, schema);

    if let Some(c) = schema.get("const") {
        if doc != c {
            return Err(format!("{path}: expected const {c}, got {doc}"));
        }
    }
    if let Some(options) = schema.get("enum").and_then(|e| e.as_array()) {
        if !options.contains(doc) {
            return Err(format!("{path}: {doc} not in enum {options:?}"));
        }
    }
    if let Some(t) = schema.get("type").and_then(|t| t.as_str()) {
        let ok = match t {
            "integer" => doc.as_i64().is_some() || doc.as_u64().is_some(),
            "number" => doc.is_number(),
            other => type_name(doc) == other,
        };
        if !ok {
            return Err(format!("{path}: expected type {t}, got {}", type_name(doc)));
        }
    }
    if let Some(required) = schema.get("required").and_then(|r| r.as_array()) {
        for key in required {
            let key = key.as_str().unwrap();
            if doc.get(key).is_none() {
                return Err(format!("{path}: missing required property '{key}'"));
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(|p| p.as_object()) {
        for (key, sub) in props {
            if let Some(v) = doc.get(key) {
                check(root, sub, v, &format!("{path}.{key}"))?;
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = doc.as_array() {
            if let Some(min) = schema.get("minItems").and_then(|m| m.as_u64()) {
                if (arr.len() as u64) < min {
                    return Err(format!("{path}: fewer than {min} items"));
                }
            }
            if let Some(max) = schema.get("maxItems").and_then(|m| m.as_u64()) {
                if (arr.len() as u64) > max {
                    return Err(format!("{path}: more than {max} items"));
                }
            }
            for (i, v) in arr.iter().enumerate() {
                check(root, items, v, &format!("{path}[{i}]"))?;
            }
        }
    }
    if let Some(min) = schema.get("minimum").and_then(|m| m.as_i64()) {
        if let Some(n) = doc.as_i64() {
            if n < min {
                return Err(format!("{path}: {n} below minimum {min}"));
            }
        }
    }
    Ok(())
}
