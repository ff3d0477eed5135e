//! A small validator for the JSON-Schema subset used by the shipped
//! schema files: `type`, `properties`, `required`, `additionalProperties`,
//! `items`, `enum`, `pattern` and `minimum`.

use serde_json::Value;

pub fn validate(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{path}: {value} not in enum {allowed:?}"));
        }
    }

    if let Some(ty) = schema.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(list) => list.iter().filter_map(Value::as_str).collect(),
            other => return Err(format!("{path}: malformed type keyword {other}")),
        };
        if !names.iter().any(|name| matches_type(name, value)) {
            return Err(format!("{path}: {value} does not match type {names:?}"));
        }
    }

    if let Some(pattern) = schema.get("pattern").and_then(Value::as_str) {
        if let Some(text) = value.as_str() {
            let re = regex::Regex::new(pattern).map_err(|e| format!("bad pattern: {e}"))?;
            if !re.is_match(text) {
                return Err(format!("{path}: {text:?} does not match /{pattern}/"));
            }
        }
    }

    if let Some(minimum) = schema.get("minimum").and_then(Value::as_f64) {
        if let Some(number) = value.as_f64() {
            if number < minimum {
                return Err(format!("{path}: {number} below minimum {minimum}"));
            }
        }
    }

    if let Some(object) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for field in required.iter().filter_map(Value::as_str) {
                if !object.contains_key(field) {
                    return Err(format!("{path}: missing required field {field:?}"));
                }
            }
        }
        let properties = schema.get("properties").and_then(Value::as_object);
        let additional = schema.get("additionalProperties");
        for (key, field_value) in object {
            let field_path = format!("{path}.{key}");
            match properties.and_then(|p| p.get(key)) {
                Some(field_schema) => validate(field_schema, field_value, &field_path)?,
                None => match additional {
                    Some(Value::Bool(false)) => {
                        return Err(format!("{field_path}: unexpected field"));
                    }
                    Some(Value::Bool(true)) | None => {}
                    Some(extra_schema) => validate(extra_schema, field_value, &field_path)?,
                },
            }
        }
    }

    if let Some(list) = value.as_array() {
        if let Some(item_schema) = schema.get("items") {
            for (idx, item) in list.iter().enumerate() {
                validate(item_schema, item, &format!("{path}[{idx}]"))?;
            }
        }
    }

    Ok(())
}

fn matches_type(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        "number" => value.is_number(),
        _ => false,
    }
}
