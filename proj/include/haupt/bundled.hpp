#ifndef HAUPT_BUNDLED_HPP
#define HAUPT_BUNDLED_HPP

#include <optional>
#include <string>
#include <string_view>

// Data files compiled into the library (catalog.tsv, 11plus.txt, a5.json,
// monster_classes.txt).
namespace haupt::bundled {

std::optional<std::string_view> file(const std::string &name);

} // namespace haupt::bundled

#endif
