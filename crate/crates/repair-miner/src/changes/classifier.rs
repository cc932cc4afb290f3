//! Turns edit operations into classified source-code changes.
//!
//! Every operation either yields exactly one change or is dropped with a
//! stated reason, so `changes.len() + dropped.len()` always equals the
//! script length. Statements map directly to statement-level change types;
//! declaration updates are classified by comparing the parsed old and new
//! headers, most significant difference first (accessibility, then
//! final-modifier, then type, then name). Operations inside an added or
//! removed declaration are dropped unless the classifier is configured to
//! count inserted bodies.

use serde::Serialize;

use crate::differ::{EditKind, EditOperation, EditScript};
use crate::error::{Error, Result};
use crate::syntax::kinds;
use crate::syntax::{decl, ClassifierSettings, Taxonomy};

use super::types::SourceCodeChange;

const STATEMENT_INSERT: &str = "statement insert";
const STATEMENT_DELETE: &str = "statement delete";
const STATEMENT_UPDATE: &str = "statement update";
const STATEMENT_PARENT_CHANGE: &str = "statement parent change";
const STATEMENT_ORDERING_CHANGE: &str = "statement ordering change";
const CONDITION_EXPRESSION_CHANGE: &str = "condition expression change";
const ALTERNATIVE_PART_INSERT: &str = "alternative part insert";
const ALTERNATIVE_PART_DELETE: &str = "alternative part delete";
const ADDITIONAL_FUNCTIONALITY: &str = "additional functionality";
const REMOVED_FUNCTIONALITY: &str = "removed functionality";
const ADDITIONAL_OBJECT_STATE: &str = "additional object state";
const REMOVED_OBJECT_STATE: &str = "removed object state";
const ADDITIONAL_CLASS: &str = "additional class";
const REMOVED_CLASS: &str = "removed class";
const CLASS_RENAMING: &str = "class renaming";
const METHOD_RENAMING: &str = "method renaming";
const ATTRIBUTE_RENAMING: &str = "attribute renaming";
const PARAMETER_RENAMING: &str = "parameter renaming";
const ATTRIBUTE_TYPE_CHANGE: &str = "attribute type change";
const PARAMETER_TYPE_CHANGE: &str = "parameter type change";
const RETURN_TYPE_INSERT: &str = "return type insert";
const RETURN_TYPE_DELETE: &str = "return type delete";
const RETURN_TYPE_CHANGE: &str = "return type change";
const PARAMETER_INSERT: &str = "parameter insert";
const PARAMETER_DELETE: &str = "parameter delete";
const PARAMETER_ORDERING_CHANGE: &str = "parameter ordering change";
const INCREASING_ACCESSIBILITY: &str = "increasing accessibility change";
const DECREASING_ACCESSIBILITY: &str = "decreasing accessibility change";
const ADDING_CLASS_DERIVABILITY: &str = "adding class derivability";
const REMOVING_CLASS_DERIVABILITY: &str = "removing class derivability";
const ADDING_METHOD_OVERRIDABILITY: &str = "adding method overridability";
const REMOVING_METHOD_OVERRIDABILITY: &str = "removing method overridability";
const ADDING_ATTRIBUTE_MODIFIABILITY: &str = "adding attribute modifiability";
const REMOVING_ATTRIBUTE_MODIFIABILITY: &str = "removing attribute modifiability";

/// The outcome of classifying one operation.
enum Outcome {
    Change(String),
    Dropped(String),
}

use Outcome::{Change, Dropped};

/// An operation that produced no change, with the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DroppedOperation {
    pub operation: EditKind,
    pub entity_type: String,
    pub line: u32,
    pub reason: String,
}

/// All classified changes of one edit script, plus the operations that were
/// dropped. `changes.len() + dropped.len()` equals the script length.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Classification {
    pub changes: Vec<SourceCodeChange>,
    pub dropped: Vec<DroppedOperation>,
}

impl Classification {
    pub fn operation_count(&self) -> usize {
        self.changes.len() + self.dropped.len()
    }
}

pub fn classify_script(script: &EditScript, path: &str, taxonomy: &Taxonomy) -> Classification {
    let mut out = Classification::default();
    for op in script.iter() {
        match classify_operation(op, &taxonomy.classifier, taxonomy) {
            Change(change_type) => out.changes.push(SourceCodeChange {
                change_type,
                entity_type: op.node.kind.clone(),
                path: path.to_string(),
                line: op.node.range.start_line,
            }),
            Dropped(reason) => out.dropped.push(DroppedOperation {
                operation: op.kind,
                entity_type: op.node.kind.clone(),
                line: op.node.range.start_line,
                reason,
            }),
        }
    }
    debug_assert!(
        out.changes
            .iter()
            .all(|c| taxonomy.is_valid_combination(&c.change_type, &c.entity_type)),
        "classifier produced a combination outside the taxonomy"
    );
    out
}

/// Like [`classify_script`], but any dropped operation is an error.
pub fn classify_script_strict(
    script: &EditScript,
    path: &str,
    taxonomy: &Taxonomy,
) -> Result<Vec<SourceCodeChange>> {
    let classified = classify_script(script, path, taxonomy);
    if let Some(d) = classified.dropped.first() {
        return Err(Error::Unclassifiable(format!(
            "{:?} of {} at {}:{}: {}",
            d.operation, d.entity_type, path, d.line, d.reason
        )));
    }
    Ok(classified.changes)
}

fn classify_operation(
    op: &EditOperation,
    settings: &ClassifierSettings,
    taxonomy: &Taxonomy,
) -> Outcome {
    if op.within_unmatched_declaration && !settings.include_inserted_body {
        return Dropped("inside an added or removed declaration".into());
    }
    let kind = op.node.kind.as_str();
    if taxonomy.is_statement_kind(kind) {
        return classify_statement(op, taxonomy);
    }
    match kind {
        k if k == kinds::ELSE_PART => classify_else_part(op),
        k if k == kinds::METHOD => classify_method(op),
        k if k == kinds::ATTRIBUTE => classify_attribute(op),
        k if k == kinds::PARAMETER => classify_parameter(op),
        k if k == kinds::CLASS => classify_class(op),
        _ => Dropped(format!("'{kind}' is structural and carries no change type")),
    }
}

fn classify_statement(op: &EditOperation, taxonomy: &Taxonomy) -> Outcome {
    match op.kind {
        EditKind::Insert => Change(STATEMENT_INSERT.into()),
        EditKind::Delete => Change(STATEMENT_DELETE.into()),
        EditKind::Update => {
            if taxonomy.is_condition_kind(&op.node.kind) {
                Change(CONDITION_EXPRESSION_CHANGE.into())
            } else {
                Change(STATEMENT_UPDATE.into())
            }
        }
        EditKind::MoveParent => Change(STATEMENT_PARENT_CHANGE.into()),
        EditKind::MoveOrder => Change(STATEMENT_ORDERING_CHANGE.into()),
    }
}

fn classify_else_part(op: &EditOperation) -> Outcome {
    match op.kind {
        EditKind::Insert => Change(ALTERNATIVE_PART_INSERT.into()),
        EditKind::Delete => Change(ALTERNATIVE_PART_DELETE.into()),
        _ => Dropped("only insert and delete are tracked for else-parts".into()),
    }
}

fn classify_method(op: &EditOperation) -> Outcome {
    match op.kind {
        EditKind::Insert => Change(ADDITIONAL_FUNCTIONALITY.into()),
        EditKind::Delete => Change(REMOVED_FUNCTIONALITY.into()),
        EditKind::Update => {
            let (Some(old), Some(new)) = (
                decl::parse_method(&op.node.value),
                op.new_value.as_deref().and_then(decl::parse_method),
            ) else {
                return Dropped("unparseable method header".into());
            };
            if old.visibility != new.visibility {
                return accessibility(old.visibility, new.visibility);
            }
            if old.is_final != new.is_final {
                // A final method cannot be overridden.
                return Change(if new.is_final {
                    REMOVING_METHOD_OVERRIDABILITY.into()
                } else {
                    ADDING_METHOD_OVERRIDABILITY.into()
                });
            }
            if old.return_type != new.return_type {
                return Change(match (old.return_type.is_empty(), new.return_type.is_empty()) {
                    (true, false) => RETURN_TYPE_INSERT.into(),
                    (false, true) => RETURN_TYPE_DELETE.into(),
                    _ => RETURN_TYPE_CHANGE.into(),
                });
            }
            if old.name != new.name {
                return Change(METHOD_RENAMING.into());
            }
            Dropped("method header change without a change type".into())
        }
        _ => Dropped("method position is not tracked".into()),
    }
}

fn classify_attribute(op: &EditOperation) -> Outcome {
    match op.kind {
        EditKind::Insert => Change(ADDITIONAL_OBJECT_STATE.into()),
        EditKind::Delete => Change(REMOVED_OBJECT_STATE.into()),
        EditKind::Update => {
            let (Some(old), Some(new)) = (
                decl::parse_attribute(&op.node.value),
                op.new_value.as_deref().and_then(decl::parse_attribute),
            ) else {
                return Dropped("unparseable attribute declaration".into());
            };
            if old.visibility != new.visibility {
                return accessibility(old.visibility, new.visibility);
            }
            if old.is_final != new.is_final {
                // A final attribute cannot be modified after construction.
                return Change(if new.is_final {
                    REMOVING_ATTRIBUTE_MODIFIABILITY.into()
                } else {
                    ADDING_ATTRIBUTE_MODIFIABILITY.into()
                });
            }
            if old.ty != new.ty {
                return Change(ATTRIBUTE_TYPE_CHANGE.into());
            }
            if old.name != new.name {
                return Change(ATTRIBUTE_RENAMING.into());
            }
            Dropped("initializer-only attribute change".into())
        }
        _ => Dropped("attribute position is not tracked".into()),
    }
}

fn classify_parameter(op: &EditOperation) -> Outcome {
    match op.kind {
        EditKind::Insert => Change(PARAMETER_INSERT.into()),
        EditKind::Delete => Change(PARAMETER_DELETE.into()),
        EditKind::Update => {
            let (Some(old), Some(new)) = (
                decl::parse_parameter(&op.node.value),
                op.new_value.as_deref().and_then(decl::parse_parameter),
            ) else {
                return Dropped("unparseable parameter declaration".into());
            };
            if old.ty != new.ty {
                return Change(PARAMETER_TYPE_CHANGE.into());
            }
            if old.name != new.name {
                return Change(PARAMETER_RENAMING.into());
            }
            Dropped("parameter modifier change without a change type".into())
        }
        EditKind::MoveOrder => Change(PARAMETER_ORDERING_CHANGE.into()),
        EditKind::MoveParent => Dropped("parameters cannot change owner".into()),
    }
}

fn classify_class(op: &EditOperation) -> Outcome {
    match op.kind {
        EditKind::Insert => Change(ADDITIONAL_CLASS.into()),
        EditKind::Delete => Change(REMOVED_CLASS.into()),
        EditKind::Update => {
            let (Some(old), Some(new)) = (
                decl::parse_class(&op.node.value),
                op.new_value.as_deref().and_then(decl::parse_class),
            ) else {
                return Dropped("unparseable class header".into());
            };
            if old.visibility != new.visibility {
                return accessibility(old.visibility, new.visibility);
            }
            if old.is_final != new.is_final {
                // A final class cannot be derived from.
                return Change(if new.is_final {
                    REMOVING_CLASS_DERIVABILITY.into()
                } else {
                    ADDING_CLASS_DERIVABILITY.into()
                });
            }
            if old.parent_class != new.parent_class {
                return Change(match (&old.parent_class, &new.parent_class) {
                    (None, Some(_)) => PARENT_CLASS_INSERT.into(),
                    (Some(_), None) => PARENT_CLASS_DELETE.into(),
                    _ => PARENT_CLASS_CHANGE.into(),
                });
            }
            if old.interfaces != new.interfaces {
                return Change(if old.interfaces.is_empty() {
                    PARENT_INTERFACE_INSERT.into()
                } else if new.interfaces.is_empty() {
                    PARENT_INTERFACE_DELETE.into()
                } else {
                    PARENT_INTERFACE_CHANGE.into()
                });
            }
            if old.name != new.name {
                return Change(CLASS_RENAMING.into());
            }
            Dropped("class header change without a change type".into())
        }
        _ => Dropped("class position is not tracked".into()),
    }
}

const PARENT_CLASS_INSERT: &str = "parent class insert";
const PARENT_CLASS_DELETE: &str = "parent class delete";
const PARENT_CLASS_CHANGE: &str = "parent class change";
const PARENT_INTERFACE_INSERT: &str = "parent interface insert";
const PARENT_INTERFACE_DELETE: &str = "parent interface delete";
const PARENT_INTERFACE_CHANGE: &str = "parent interface change";

fn accessibility(old: decl::Visibility, new: decl::Visibility) -> Outcome {
    if new > old {
        Change(INCREASING_ACCESSIBILITY.into())
    } else {
        Change(DECREASING_ACCESSIBILITY.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differ::diff;
    use crate::syntax::{parse_mini_java, Origin};

    fn classify(src_l: &str, src_r: &str) -> Classification {
        let tax = Taxonomy::default_taxonomy();
        let l = parse_mini_java(src_l, Origin::unknown()).unwrap();
        let r = parse_mini_java(src_r, Origin::unknown()).unwrap();
        let (_, script) = diff(&l.root, &r.root, &tax.differ).unwrap();
        let c = classify_script(&script, "A.java", tax);
        assert_eq!(c.operation_count(), script.len());
        c
    }

    fn labels(c: &Classification) -> Vec<String> {
        c.changes
            .iter()
            .map(|ch| format!("{} of {}", ch.change_type, ch.entity_type))
            .collect()
    }

    #[test]
    fn statement_level_changes() {
        let c = classify(
            "class A { void m() { a(); } }",
            "class A { void m() { a(); b(); } }",
        );
        assert_eq!(labels(&c), vec!["statement insert of method invocation"]);

        let c = classify(
            "class A { void m() { while (i < n) { a(); } } }",
            "class A { void m() { while (i <= n) { a(); } } }",
        );
        assert_eq!(labels(&c), vec!["condition expression change of while statement"]);

        let c = classify(
            "class A { void m() { x = 1; } }",
            "class A { void m() { x = 2; } }",
        );
        assert_eq!(labels(&c), vec!["statement update of assignment"]);
    }

    #[test]
    fn else_part_changes() {
        let c = classify(
            "class A { void m() { if (x) { aaaa(); bbbb(); } } }",
            "class A { void m() { if (x) { aaaa(); bbbb(); } else { cccc(); } } }",
        );
        let ls = labels(&c);
        assert!(ls.contains(&"alternative part insert of else-part".to_string()), "{ls:?}");
        assert!(ls.contains(&"statement insert of method invocation".to_string()));
    }

    #[test]
    fn added_method_counts_once_by_default() {
        let c = classify(
            "class A { void keep() { k(); } }",
            "class A { void keep() { k(); } void fresh(int a) { x = 1; y = 2; } }",
        );
        assert_eq!(labels(&c), vec!["additional functionality of method"]);
        assert_eq!(c.dropped.len(), 3);
    }

    #[test]
    fn added_method_body_counts_when_configured() {
        let tax = Taxonomy::default_taxonomy();
        let mut tax2 = tax.clone();
        tax2.classifier.include_inserted_body = true;
        let l = parse_mini_java("class A { }", Origin::unknown()).unwrap();
        let r = parse_mini_java("class A { void fresh() { x = 1; } }", Origin::unknown()).unwrap();
        let (_, script) = diff(&l.root, &r.root, &tax2.differ).unwrap();
        let c = classify_script(&script, "A.java", &tax2);
        let ls = labels(&c);
        assert!(ls.contains(&"additional functionality of method".to_string()));
        assert!(ls.contains(&"statement insert of assignment".to_string()));
    }

    #[test]
    fn declaration_header_changes() {
        let c = classify(
            "class A { void m(int a) { } }",
            "class A { void m(long a) { } }",
        );
        assert_eq!(labels(&c), vec!["parameter type change of parameter"]);

        let c = classify(
            "class A { void m(int a) { } }",
            "class A { void m(int b) { } }",
        );
        assert_eq!(labels(&c), vec!["parameter renaming of parameter"]);

        let c = classify(
            "class A { private int count = 0; }",
            "class A { public int count = 0; }",
        );
        assert_eq!(labels(&c), vec!["increasing accessibility change of attribute"]);

        let c = classify(
            "class A { int count; }",
            "class A { final int count; }",
        );
        assert_eq!(labels(&c), vec!["removing attribute modifiability of attribute"]);

        let c = classify(
            "class A { int m() { return x; } }",
            "class A { long m() { return x; } }",
        );
        assert_eq!(labels(&c), vec!["return type change of method"]);
    }

    #[test]
    fn class_header_changes() {
        let c = classify("class A { }", "class A extends B { }");
        assert_eq!(labels(&c), vec!["parent class insert of class"]);

        let c = classify("class A extends B { }", "class A extends C { }");
        assert_eq!(labels(&c), vec!["parent class change of class"]);

        let c = classify("class A implements I { }", "class A implements I, J { }");
        assert_eq!(labels(&c), vec!["parent interface change of class"]);

        let c = classify("class A { }", "final class A { }");
        assert_eq!(labels(&c), vec!["removing class derivability of class"]);
    }

    #[test]
    fn initializer_only_changes_are_dropped() {
        let c = classify(
            "class A { private int count = 0; }",
            "class A { private int count = 1; }",
        );
        assert!(c.changes.is_empty());
        assert_eq!(c.dropped.len(), 1);
        assert!(c.dropped[0].reason.contains("initializer"));
    }

    #[test]
    fn strict_mode_rejects_drops() {
        let tax = Taxonomy::default_taxonomy();
        let l = parse_mini_java("class A { private int c = 0; }", Origin::unknown()).unwrap();
        let r = parse_mini_java("class A { private int c = 1; }", Origin::unknown()).unwrap();
        let (_, script) = diff(&l.root, &r.root, &tax.differ).unwrap();
        let err = classify_script_strict(&script, "A.java", tax).unwrap_err();
        assert!(matches!(err, Error::Unclassifiable(_)));
    }

    #[test]
    fn emitted_combinations_are_valid() {
        let tax = Taxonomy::default_taxonomy();
        let cases = [
            ("class A { void m() { a(); } }", "class A { void m() { } }"),
            ("class A { void m() { if (x) { aa(); bb(); } } }",
             "class A { void m() { if (y) { aa(); bb(); } } }"),
            ("class A { int f; }", "class A { long f; }"),
            ("class A { void m(int a, int b) { } }", "class A { void m(int b, int a) { } }"),
        ];
        for (l, r) in cases {
            for ch in classify(l, r).changes {
                assert!(
                    tax.is_valid_combination(&ch.change_type, &ch.entity_type),
                    "{} of {}",
                    ch.change_type,
                    ch.entity_type
                );
            }
        }
    }
}
