#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "twistbench/dfm.hpp"
#include "twistbench/real_extension.hpp"
#include "twistbench/rep.hpp"
#include "twistbench/transgression.hpp"

// JSON file formats. Every top-level document carries "format": 1 and may
// name its "kind"; nested groupoids and extensions are either inline objects
// or paths relative to the enclosing file. Unknown keys are rejected.
namespace twistbench::io {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum class FileKind { groupoid, functor, cochain, extension, multiplicative, real_extension, dfm, rep };

std::string to_string(FileKind k);
FileKind parse_kind(const std::string& s);

struct Document {
    Json json;
    fs::path dir;  // base for relative paths
    FileKind kind;
};

Document parse_document(const std::string& text, const fs::path& dir = ".");
Document read_document(const fs::path& path);
// the "kind" key when present, otherwise inferred from the keys
FileKind detect_kind(const Json& j);

struct RawGroupoid {
    FiniteGroupoid base;
    std::vector<int> phi;
};

// unvalidated tables, so that broken axioms can be reported
RawGroupoid parse_raw_groupoid(const Json& j, const fs::path& dir = ".");
ValidationReport validate_raw_groupoid(const RawGroupoid& g);
GroupoidPtr parse_groupoid(const Json& j, const fs::path& dir = ".");
Json groupoid_to_json(const GradedGroupoid& g);

struct GroupData {
    GroupTable group;
    std::vector<int> epsilon;
};
GroupData parse_group(const Json& j);
Json group_to_json(const GroupTable& g, const std::vector<int>& epsilon = {});

GroupoidFunctor parse_functor(const Json& j, const fs::path& dir = ".");
Json functor_to_json(const GroupoidFunctor& F);

// "g1|g2|..." keys in composition order; level 0 keys are object ids
Cochain parse_cochain_values(const GroupoidPtr& g, int level, CoefficientModule coeff, const Json& values);
Json cochain_values_to_json(const Cochain& c, bool skip_zero = true);

Cochain parse_cochain(const Json& j, const fs::path& dir = ".");
Json cochain_to_json(const Cochain& c);

struct ExtensionFile {
    TwistedExtension extension;
    std::optional<Cochain> alpha;  // Brauer-Wall label per object, when given
};

ExtensionFile parse_extension_file(const Json& j, const fs::path& dir = ".");
TwistedExtension parse_extension(const Json& j, const fs::path& dir = ".");
// {modulus, c, lambda} on a known groupoid
TwistedExtension parse_extension_body(const GroupoidPtr& g, const Json& j);
Json extension_to_json(const TwistedExtension& e, const std::optional<Cochain>& alpha = std::nullopt);

MultiplicativeTwisting parse_multiplicative(const Json& j);
Json multiplicative_to_json(const MultiplicativeTwisting& t);

RealCentralExtension parse_real_extension(const Json& j, const fs::path& dir = ".");
Json real_extension_to_json(const RealCentralExtension& r);

DFMTwisting parse_dfm(const Json& j, const fs::path& dir = ".");
Json dfm_to_json(const DFMTwisting& t);

TwistedMorphismData parse_rep(const Json& j, const fs::path& dir = ".");
Json rep_to_json(const TwistedMorphismData& r);

// an extension read against another copy of its groupoid, moved onto g
TwistedExtension rehome(const TwistedExtension& e, const GroupoidPtr& g);
bool same_groupoid(const GradedGroupoid& a, const GradedGroupoid& b);

// the validate_* report for any document; invalid nested data is reported, not thrown
ValidationReport validate_document(const Document& d, const Limits& limits = default_limits());

Json report_to_json(const ValidationReport& r);

}  // namespace twistbench::io
