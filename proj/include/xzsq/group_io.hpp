#ifndef XZSQ_GROUP_IO_HPP
#define XZSQ_GROUP_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "xzsq/group.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

/// Builds a group from a descriptor expression:
///   cyclic(n) | dihedral(n) | quaternion8 | symmetric(n) | alternating(n)
///   | product(D1,D2) | perm((1 2 3),(1 2)) | file:path | <catalog name>
Group load_group(std::string_view descriptor);

/// Parses the line-oriented descriptor file format:
///   group <name> <order>
///   table            followed by <order> rows of ids, or
///   perm             followed by one generator per line in cycle notation.
/// Lines starting with '#' are ignored.
Group parse_group_text(std::string_view text, std::string descriptor = {});
Group read_group_file(const std::string& path);
/// Writes the table form of the file format.
std::string format_group_table(const GroupTable& g);

/// Cycle notation on points 1..degree, e.g. "(1 2 3)(4 5)"; "()" is the identity.
Permutation parse_cycles(std::string_view text, std::size_t degree);
/// Largest point mentioned in a cycle-notation string.
std::size_t max_cycle_point(std::string_view text);

struct CatalogEntry {
  std::string name;
  std::string descriptor;
  std::size_t order;
  bool abelian;
};

/// The built-in list of small groups used by the searches and the acceptance suite.
const std::vector<CatalogEntry>& catalog();

/// Subset text: "order:hex", "all", "none", or an element list such as
/// "{0,1,3}" / "0 1 3".
Subset parse_subset(const Group& g, std::string_view text);

} // namespace xzsq

#endif // XZSQ_GROUP_IO_HPP
