#ifndef SPONGE_TEST_FIXTURES_HPP_
#define SPONGE_TEST_FIXTURES_HPP_

#include <string>

#include "sponge/sponge_model.hpp"

namespace fixtures {

inline sponge::SpongeSpec fig1() {
  return sponge::SpongeSpec::canonical({2, 3, 3}, {{0, 0, 0}, {0, 1, 1}, {0, 2, 2}, {1, 0, 1}});
}

inline sponge::SpongeSpec modified() {
  return sponge::SpongeSpec::canonical({2, 3, 3}, {{0, 0, 0}, {0, 1, 1}, {0, 2, 1}, {0, 2, 2}, {1, 0, 1}});
}

inline std::string data(const std::string& name) { return std::string(SPONGE_TEST_DATA) + "/" + name; }

}  // namespace fixtures

#endif  // SPONGE_TEST_FIXTURES_HPP_
