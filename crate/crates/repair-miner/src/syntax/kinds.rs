//! Canonical entity-kind names shared by the frontends, the differ, and the
//! change classifier. Kind strings in trees always use these spellings.

pub const COMPILATION_UNIT: &str = "compilation unit";
pub const CLASS: &str = "class";
pub const METHOD: &str = "method";
pub const ATTRIBUTE: &str = "attribute";
pub const PARAMETER: &str = "parameter";
pub const THEN_PART: &str = "then-part";
pub const ELSE_PART: &str = "else-part";
pub const CATCH_CLAUSE: &str = "catch clause";
pub const IF_STATEMENT: &str = "if statement";
pub const WHILE_STATEMENT: &str = "while statement";
pub const FOR_STATEMENT: &str = "for statement";
pub const TRY_STATEMENT: &str = "try statement";
pub const METHOD_INVOCATION: &str = "method invocation";
pub const ASSIGNMENT: &str = "assignment";
pub const VARIABLE_DECLARATION: &str = "variable declaration statement";
pub const RETURN_STATEMENT: &str = "return statement";
pub const THROW_STATEMENT: &str = "throw statement";

/// Kinds whose nodes declare named program elements. Matching and change
/// classification treat these differently from statements.
pub const DECLARATION_KINDS: &[&str] = &[CLASS, METHOD, ATTRIBUTE, PARAMETER];

pub fn is_declaration_kind(kind: &str) -> bool {
    DECLARATION_KINDS.contains(&kind)
}
