#ifndef QFOCK_JSON_IO_HPP
#define QFOCK_JSON_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qfock/fockspan.hpp"
#include "qfock/linalg.hpp"
#include "qfock/operators.hpp"
#include "qfock/testfn.hpp"

namespace qfock {

using Json = nlohmann::json;

Json to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json to_json(const Cell& c);
Cell cell_from_json(const Json& j);

/// {"dim": d, "cells": [{"lo": [...], "hi": [...], "re": x, "im": y}, ...]}
Json to_json(const StepFunction& f);
StepFunction step_function_from_json(const Json& j);

/// Operator grammar mirroring the OperatorSpec variants, e.g.
/// {"op":"compose","items":[{"op":"gauge","alpha":{...}},
///                          {"op":"rearrange","pairs":[...]}]}
Json to_json(const OperatorSpec& t);
OperatorSpec operator_from_json(const Json& j);

Json to_json(const HermitianMatrix& m);

Json to_json(const FockSpan& span);
FockSpan span_from_json(const Json& j, const CouplingConstant& c);

/// Stable FNV-1a hash of the canonical (sorted-key) serialization.
std::uint64_t canonical_digest(const Json& j);
std::string canonical_digest_hex(const Json& j);

}  // namespace qfock

#endif
