#ifndef SCIGIS_DEFAULT_DATA_HPP
#define SCIGIS_DEFAULT_DATA_HPP

#include <string_view>

// Contents of the files under data/, compiled into the library.
namespace scigis::default_data {

std::string_view abbreviations();
std::string_view closed_class_words();
std::string_view syllable_exceptions();
std::string_view connectives();

}  // namespace scigis::default_data

#endif  // SCIGIS_DEFAULT_DATA_HPP
