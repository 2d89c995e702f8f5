#include "robeval/docstring_transforms.hpp"

#include "robeval/rng.hpp"
#include "robeval/textperturb.hpp"

namespace robeval {

TransformOutcome apply_docstring_transform(const PromptDocument& doc, const TransformSpec& spec,
                                           std::uint64_t seed, const Providers& providers) {
  if (!doc.docstring_span)
    throw NoApplicableSite("prompt has no docstring for transform " + spec.name);
  const ByteRange span = *doc.docstring_span;
  const std::string content = doc.full_text.substr(span.start, span.size());

  TextPerturbContext ctx{&doc.blacklist};
  Rng rng(seed);
  auto param = [&](const char* key) { return spec.params.at(key); };

  std::string rewritten;
  bool degraded = false;
  if (spec.name == "BackTranslation") {
    auto r = providers.paraphraser->paraphrase(content);
    rewritten = r.text;
    degraded = r.degraded;
  } else if (spec.name == "ButterFingers") {
    rewritten = butterfingers(content, param("p"), rng, ctx);
  } else if (spec.name == "ChangeCharCase") {
    rewritten = change_char_case(content, param("p"), rng, ctx);
  } else if (spec.name == "SwapCharacters") {
    rewritten = swap_characters(content, param("p"), rng, ctx);
  } else if (spec.name == "Whitespace") {
    rewritten = whitespace_perturb(content, param("p_add"), param("p_del"), rng, ctx);
  } else if (spec.name == "SynonymSubstitution") {
    rewritten = synonym_substitution(content, param("p"), providers.lexicon, rng, ctx);
  } else if (spec.name == "SynonymInsertion") {
    rewritten = synonym_insertion(content, param("p"), providers.lexicon, rng, ctx);
  } else if (spec.name == "EnglishInflectionalVariation") {
    Tagger tagger(&providers.lexicon);
    rewritten = inflectional_variation(content, param("p"), tagger, providers.inflector, rng, ctx);
  } else if (spec.name == "TenseTransformationPast") {
    Tagger tagger(&providers.lexicon);
    rewritten = tense_past(content, tagger, providers.inflector, ctx);
  } else if (spec.name == "TenseTransformationFuture") {
    Tagger tagger(&providers.lexicon);
    rewritten = tense_future(content, tagger, providers.inflector, ctx);
  } else {
    throw ValidationError("unknown docstring transform: " + spec.name);
  }

  TransformOutcome out;
  out.changed = rewritten != content;
  out.degraded = degraded;
  out.prompt = out.changed ? splice(doc.full_text, span, rewritten) : doc.full_text;
  return out;
}

}  // namespace robeval
