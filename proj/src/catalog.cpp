#include "robeval/catalog.hpp"

#include <sstream>

namespace robeval {

namespace {

std::vector<TransformSpec> build_catalog() {
  std::vector<TransformSpec> c;
  auto add = [&](Family f, const char* name, bool det,
                 std::map<std::string, double> params = {}) {
    c.push_back(TransformSpec{f, name, std::move(params), det});
  };

  // Docstring family.
  add(Family::docstring, "BackTranslation", true);
  add(Family::docstring, "ButterFingers", false, {{"p", 0.05}});
  add(Family::docstring, "ChangeCharCase", false, {{"p", 0.35}});
  add(Family::docstring, "EnglishInflectionalVariation", false, {{"p", 0.35}});
  add(Family::docstring, "SwapCharacters", false, {{"p", 0.05}});
  add(Family::docstring, "SynonymInsertion", false, {{"p", 0.35}});
  add(Family::docstring, "SynonymSubstitution", false, {{"p", 0.35}});
  add(Family::docstring, "TenseTransformationPast", true);
  add(Family::docstring, "TenseTransformationFuture", true);
  add(Family::docstring, "Whitespace", false, {{"p_add", 0.1}, {"p_del", 0.05}});

  // Function-name family.
  add(Family::func_name, "CamelCase", true);
  add(Family::func_name, "FuncRenameButterFingers", false, {{"p", 0.05}});
  add(Family::func_name, "FuncRenameSwapCharacters", false, {{"p", 0.05}});
  add(Family::func_name, "FuncRenameChangeCharCase", false, {{"p", 0.35}});
  add(Family::func_name, "FuncRenameInflectionalVariation", false, {{"p", 0.35}});
  add(Family::func_name, "FuncRenameSynonymSubstitution", false, {{"p", 0.35}});

  // Code-syntax family.
  add(Family::syntax, "DeadCodeInserter", false);
  add(Family::syntax, "ForWhileTransformer", false);
  add(Family::syntax, "OperandSwap", false);
  add(Family::syntax, "VarRenamerCB", true);
  add(Family::syntax, "VarRenamerNaive", true);
  add(Family::syntax, "VarRenamerRN", false);

  // Code-format family.
  add(Family::format, "TabIndent", true);
  add(Family::format, "LineSplit", true);
  add(Family::format, "Doc2Comments", true);
  add(Family::format, "NewlineRandom", false);
  add(Family::format, "NewlineAfterCode", true);
  add(Family::format, "NewlineAfterDoc", true);

  return c;
}

}  // namespace

const std::vector<TransformSpec>& catalog() {
  static const std::vector<TransformSpec> c = build_catalog();
  return c;
}

const TransformSpec& catalog_lookup(const std::string& name) {
  for (const auto& s : catalog())
    if (s.name == name) return s;
  std::ostringstream msg;
  msg << "unknown transform '" << name << "'; catalog:";
  for (const auto& s : catalog()) msg << " " << s.name;
  throw ValidationError(msg.str());
}

std::vector<TransformSpec> catalog_family(Family f) {
  std::vector<TransformSpec> out;
  for (const auto& s : catalog())
    if (s.family == f) out.push_back(s);
  return out;
}

}  // namespace robeval
