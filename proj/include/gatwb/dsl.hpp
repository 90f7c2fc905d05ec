#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gatwb/congruence.hpp"
#include "gatwb/extension.hpp"
#include "gatwb/model.hpp"
#include "gatwb/signature.hpp"

namespace gatwb::dsl {

enum class FileKind { Theory, Model, Morphism, Congruence, Marks };

struct SourceFile {
    std::string path;
    std::string text;
    FileKind kind = FileKind::Theory;
};

struct Diagnostic {
    enum class Severity { Error, Warning } severity = Severity::Error;
    std::string message;
    int line = 1;
    int col = 1;
    std::string to_string() const;
};

template <typename T>
struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return value.has_value(); }
};

// Resolves `theory <name>` headers: built-ins first, then *.gat files on the
// search path (GAT_SEARCH_PATH plus explicit directories).
class TheoryResolver {
public:
    TheoryResolver();
    virtual ~TheoryResolver() = default;
    void add_search_dir(const std::string& dir);
    virtual std::optional<Signature> resolve(const std::string& name) const;

private:
    std::vector<std::string> dirs_;
};

ParseResult<Signature> parse_theory(const SourceFile& src,
                                    const TheoryResolver* resolver = nullptr);

struct ParsedModel {
    std::string theory;
    FiniteModel model;
};
ParseResult<ParsedModel> parse_model(const SourceFile& src, const TheoryResolver& resolver);

struct ParsedMorphism {
    std::string theory;
    ModelMorphism morphism;
};
// Model resolution: morphism files name their source/target model files.
using ModelResolver = std::function<std::optional<FiniteModel>(const std::string&)>;
ParseResult<ParsedMorphism> parse_morphism(const SourceFile& src, const TheoryResolver& theories,
                                           const ModelResolver& models);

struct ParsedCongruence {
    std::string theory;
    std::string model;
    Congruence congruence;
};
ParseResult<ParsedCongruence> parse_congruence(const SourceFile& src, const TheoryResolver& theories,
                                               const ModelResolver& models);

struct ParsedMarks {
    std::string theory;
    std::string homotopy;
    std::vector<MarkedHomotopy> marks;
};
ParseResult<ParsedMarks> parse_marks(const SourceFile& src, const TheoryResolver& theories);

// Deterministic formatting; parse_theory(pretty(sig)) is structurally sig.
std::string pretty(const Signature& sig);

// Elaborates a term in a named context; exposed for tools and tests.
ParseResult<Term> parse_term(const Signature& sig, const Context& ctx, const std::string& text);
ParseResult<Context> parse_context(const Signature& sig, const std::string& text);

std::string pretty_model(const FiniteModel& m, const std::string& theory_name);

} // namespace gatwb::dsl
