#ifndef SPONGE_SPEC_IO_HPP_
#define SPONGE_SPEC_IO_HPP_

#include <string>
#include <string_view>
#include <variant>

#include "sponge/sponge_model.hpp"

namespace sponge {

using AnySpec = std::variant<SpongeSpec, LgSpongeSpec>;

// Parses a sponge spec document. Throws ParseError on malformed JSON or a
// document that does not follow the schema; semantic checks are left to
// validate_bm / validate_lg.
AnySpec parse_spec(std::string_view json_text);
AnySpec load_spec(const std::string& path);

// Serializes in canonical coordinate order.
std::string spec_to_json(const SpongeSpec& spec);
std::string spec_to_json(const LgSpongeSpec& spec);

}  // namespace sponge

#endif  // SPONGE_SPEC_IO_HPP_
