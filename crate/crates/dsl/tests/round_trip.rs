use basecat_core::random::Generator;
use basecat_core::FinCat;
use basecat_dsl::{parse, print, Document, Environment, Item, LoadOptions};
use proptest::prelude::*;

fn generated(seed: u64) -> Document {
    let mut g = Generator::new(seed);
    let inst = g.instance();
    let act = g.action();
    let f = &inst.functor;
    let mut doc = Document::default();
    let mut cats: Vec<&FinCat> = vec![f.target(), act.group()];
    if f.source().name() != f.target().name() {
        cats.insert(0, f.source());
    }
    let mut seen = Vec::new();
    for c in cats {
        if !seen.contains(&c.name()) {
            seen.push(c.name());
            doc.push(Item::Category(c.presentation()));
        }
    }
    doc.push(Item::Functor(f.presentation()));
    doc.push(Item::Concrete(inst.concrete.presentation()));
    doc.push(Item::Action(act.presentation()));
    doc
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn print_then_parse_is_the_identity(seed in any::<u64>()) {
        let doc = generated(seed);
        let text = print(&doc);
        let back = parse("gen.bcat", &text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert!(back.same_structure(&doc));
        prop_assert_eq!(print(&back), text);
    }

    #[test]
    fn printed_values_validate_again(seed in any::<u64>()) {
        let doc = generated(seed);
        let back = parse("gen.bcat", &print(&doc)).unwrap();
        let env = Environment::from_document(&back, LoadOptions::default())
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(env.functors.len(), 1);
        prop_assert_eq!(env.actions.len(), 1);
    }
}
