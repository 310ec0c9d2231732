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

#ifndef AGSSL_SRC_DATASETS_INTERNAL_H_
#define AGSSL_SRC_DATASETS_INTERNAL_H_

#include <string_view>

namespace agssl::internal {

std::string_view KarateEdges();
std::string_view KarateLabels();
std::string_view DolphinEdges();
std::string_view DolphinLabels();

}  // namespace agssl::internal

#endif  // AGSSL_SRC_DATASETS_INTERNAL_H_
