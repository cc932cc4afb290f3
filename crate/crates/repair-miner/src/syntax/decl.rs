//! Interprets the normalized header text stored as the value of declaration
//! nodes (classes, methods, attributes, parameters). Values are whitespace
//! token streams as produced by the frontends; a trailing comma sticks to its
//! token and is stripped where lists are parsed.

pub(crate) const MODIFIERS: &[&str] = &[
    "public",
    "protected",
    "private",
    "static",
    "final",
    "abstract",
    "synchronized",
    "native",
    "transient",
    "volatile",
    "strictfp",
];

/// Access levels ordered from most restrictive to most permissive, so that
/// `new > old` means accessibility increased.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Visibility {
    Private,
    Package,
    Protected,
    Public,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ClassParts {
    pub visibility: Visibility,
    pub is_final: bool,
    pub name: String,
    pub parent_class: Option<String>,
    pub interfaces: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MethodParts {
    pub visibility: Visibility,
    pub is_final: bool,
    /// Empty for constructors.
    pub return_type: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct AttributeParts {
    pub visibility: Visibility,
    pub is_final: bool,
    pub ty: String,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ParameterParts {
    pub ty: String,
    pub name: String,
}

fn chunks(value: &str) -> Vec<&str> {
    value.split_whitespace().collect()
}

fn modifier_prefix_len(chunks: &[&str]) -> usize {
    chunks
        .iter()
        .take_while(|c| MODIFIERS.contains(&c.trim_end_matches(',')))
        .count()
}

fn visibility_of(modifiers: &[&str]) -> Visibility {
    for m in modifiers {
        match *m {
            "public" => return Visibility::Public,
            "protected" => return Visibility::Protected,
            "private" => return Visibility::Private,
            _ => {}
        }
    }
    Visibility::Package
}

pub(crate) fn parse_class(value: &str) -> Option<ClassParts> {
    let toks = chunks(value);
    let class_pos = toks.iter().position(|t| *t == "class")?;
    let modifiers = &toks[..class_pos];
    let name = toks.get(class_pos + 1)?.to_string();
    let mut rest = &toks[class_pos + 2..];
    let mut parent_class = None;
    let mut interfaces = Vec::new();
    if rest.first() == Some(&"extends") {
        let end = rest
            .iter()
            .position(|t| *t == "implements")
            .unwrap_or(rest.len());
        parent_class = Some(rest[1..end].join(" "));
        rest = &rest[end..];
    }
    if rest.first() == Some(&"implements") {
        interfaces = rest[1..]
            .join(" ")
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
    }
    Some(ClassParts {
        visibility: visibility_of(modifiers),
        is_final: modifiers.contains(&"final"),
        name,
        parent_class,
        interfaces,
    })
}

pub(crate) fn parse_method(value: &str) -> Option<MethodParts> {
    let toks = chunks(value);
    let end = toks.iter().position(|t| *t == "throws").unwrap_or(toks.len());
    let head = &toks[..end];
    let prefix = modifier_prefix_len(head);
    let (modifiers, rest) = head.split_at(prefix);
    let name = (*rest.last()?).to_string();
    Some(MethodParts {
        visibility: visibility_of(modifiers),
        is_final: modifiers.contains(&"final"),
        return_type: rest[..rest.len() - 1].join(" "),
        name,
    })
}

pub(crate) fn parse_attribute(value: &str) -> Option<AttributeParts> {
    let toks = chunks(value);
    let end = toks.iter().position(|t| *t == "=").unwrap_or(toks.len());
    let head = &toks[..end];
    let prefix = modifier_prefix_len(head);
    let (modifiers, rest) = head.split_at(prefix);
    if rest.len() < 2 {
        return None;
    }
    Some(AttributeParts {
        visibility: visibility_of(modifiers),
        is_final: modifiers.contains(&"final"),
        ty: rest[..rest.len() - 1].join(" "),
        name: (*rest.last().unwrap()).to_string(),
    })
}

pub(crate) fn parse_parameter(value: &str) -> Option<ParameterParts> {
    let toks = chunks(value);
    let prefix = modifier_prefix_len(&toks);
    let rest = &toks[prefix..];
    if rest.len() < 2 {
        return None;
    }
    Some(ParameterParts {
        ty: rest[..rest.len() - 1].join(" "),
        name: (*rest.last().unwrap()).to_string(),
    })
}

/// The declared name of a node value, by kind; `None` when the value does not
/// parse as a declaration of that kind.
pub(crate) fn declared_name(kind: &str, value: &str) -> Option<String> {
    use super::kinds;
    match kind {
        k if k == kinds::CLASS => parse_class(value).map(|p| p.name),
        k if k == kinds::METHOD => parse_method(value).map(|p| p.name),
        k if k == kinds::ATTRIBUTE => parse_attribute(value).map(|p| p.name),
        k if k == kinds::PARAMETER => parse_parameter(value).map(|p| p.name),
        _ => None,
    }
}
