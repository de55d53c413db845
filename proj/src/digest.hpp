// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_DIGEST_HPP
#define ENRIFACT_DIGEST_HPP

#include <string>
#include <string_view>

namespace enrifact::detail {

std::string sha256_hex(std::string_view text);

}  // namespace enrifact::detail

#endif
