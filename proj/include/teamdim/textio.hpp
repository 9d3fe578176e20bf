#pragma once

#include "teamdim/dims.hpp"
#include "teamdim/family.hpp"

#include <string>
#include <string_view>

// Line-oriented text formats shared by the CLI and the tests.
namespace teamdim::io {

std::string_view trim(std::string_view s);

// `-` for the empty set, else ascending space-separated indices below width
Subset parse_element_list(std::string_view text, std::size_t width, int line);
std::string format_element_list(const Subset& s);

// `base N` followed by one member per line; duplicate members are rejected
Family parse_family(const std::string& text);
std::string format_family(const Family& f);

// one line per witness piece: a member, or `[lower] [upper]`
std::string format_witness(const dims::CoverResult& r);

}  // namespace teamdim::io
