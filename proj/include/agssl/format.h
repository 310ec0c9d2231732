// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AGSSL_FORMAT_H_
#define AGSSL_FORMAT_H_

#include <span>
#include <string>
#include <string_view>

namespace agssl {

// Shortest decimal string that round-trips to the same double. Infinities
// print as "inf" / "-inf", NaN as "nan".
std::string FormatDouble(double x);

// Elements joined by sep, e.g. "3;7;12".
std::string JoinInts(std::span<const int> values, std::string_view sep);

}  // namespace agssl

#endif  // AGSSL_FORMAT_H_
