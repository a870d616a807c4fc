#pragma once

// JSON documents for every result type. Streams are one record per line;
// every document and record carries schema_version.

#include "twosel/twist_lab.hpp"

#include <json.hpp>

namespace twosel::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Decimal number when it fits in int64, decimal string otherwise.
json integer(const Integer& n);
Integer integer_from(const json& j);

json masks(const std::map<Place, LocalSquareClass>& m);

json selmer(const SelmerResult& r, const std::string& curve, const std::string& model,
            const std::map<Place, LocalSquareClass>& masks, const std::optional<Integer>& twist);

json record(const TwistRecord& r);
TwistRecord record_from(const json& j);

json summary(const ScanSummary& s);
ScanSummary summary_from(const json& j);

json inc2(const Inc2Result& r, const std::string& curve);
json plus_one(const PlusOneResult& r, const std::string& curve);
json duality(const DualityReport& r);
json collapse(const CollapseResult& r);
json multiplicative(const MultiplicativeReport& r);

}  // namespace twosel::report
