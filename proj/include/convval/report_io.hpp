#pragma once
#include <string>

#include "json.hpp"

#include "convval/harness.hpp"

namespace convval {

// one report document per suite; generated_at is the only field allowed to
// differ between identically-configured runs
nlohmann::ordered_json report_to_json(const PropertyReport& rep, uint64_t seed,
                                      const std::string& generated_at);

// RFC 4180: CRLF row endings, quotes doubled, fields with separators quoted
std::string report_to_csv(const PropertyReport& rep, uint64_t seed,
                          const std::string& generated_at);

std::string csv_field(const std::string& s);

std::string iso_timestamp_now();

void write_text_file(const std::string& path, const std::string& text);

} // namespace convval
