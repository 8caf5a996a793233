#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rap/types.hpp"

namespace rap {

/// Reads an offer book from CSV (header `id,volume_mw,reliability,
/// price_per_mw,source`; the source column is optional) or from a JSON array
/// of offer objects when the path ends in .json. Errors carry line numbers.
OfferBook read_offers(const std::string& path);
OfferBook read_offers_csv(std::istream& is, const std::string& origin = "offers");

std::string offers_to_csv(const OfferBook& book);
void write_offers_csv(const std::string& path, const OfferBook& book);

/// Stable 64-bit FNV-1a over the canonical CSV serialization; guards the
/// frozen scenario books against drift.
std::uint64_t offers_fingerprint(const OfferBook& book);

}  // namespace rap
