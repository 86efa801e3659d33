#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "gtl/decision.hpp"
#include "gtl/quasimodel.hpp"
#include "gtl/semantics.hpp"
#include "gtl/unwind.hpp"

namespace gtl {

using Json = nlohmann::ordered_json;

/// Malformed documents; the message names the offending field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json readJsonFile(const std::filesystem::path& path);
void writeJsonFile(const std::filesystem::path& path, const Json& doc);
void writeTextFile(const std::filesystem::path& path, const std::string& text);

/// {"kind":"real","states":N,"loopback":i,"valuation":{"p":["1/2",...]}}; values may
/// also be bare integers.
RealModel realModelFromJson(const Json& doc);
Json toJson(const RealModel& m);

/// {"kind":"bi","worlds":K,"states":N,"loopback":i,"valuation":{"p":[[w,t],...]}}.
BiModel biModelFromJson(const Json& doc);
Json toJson(const BiModel& m);

/// Either kind of model, dispatched on "kind".
bool isBiModelDocument(const Json& doc);

/// {"sigma":[...], "worlds":[{"id","component","rank","label":[indices]}], "rel":[[id,id],...]}.
/// Label indices refer to positions in "sigma", which must be closed under subformulas.
Quasimodel quasimodelFromJson(const Json& doc);
Json toJson(const Quasimodel& q);

/// {"formula", "pivot", "moments":[[[members]...]...], "relations":[[[s,t],...]...]}.
Witness witnessFromJson(const Json& doc);
Json toJson(const Witness& w);

Json toJson(const FiniteGrid& g, const Quasimodel& q);

std::string toDot(const Quasimodel& q);

}  // namespace gtl
