#ifndef CACHESCHED_INSTANCE_IO_HPP
#define CACHESCHED_INSTANCE_IO_HPP

#include <iosfwd>
#include <string>

#include "cachesched/instance.hpp"

namespace cachesched {

// Instance documents are JSON with top-level fields T, F, U, capacity,
// cost_server, cost_cache, an array `sizes` of length F, and an array
// `requests` of {user, index, content, origin, deadline}. All ids 1-based.
// This is the interchange format used by every CLI command.

void save_instance(const Instance& instance, std::ostream& sink);
void save_instance(const Instance& instance, const std::string& path);
std::string instance_to_string(const Instance& instance);

// Throws ParseError naming the first offending field.
Instance load_instance(std::istream& source);
Instance load_instance_file(const std::string& path);
Instance instance_from_string(const std::string& text);

} // namespace cachesched

#endif
