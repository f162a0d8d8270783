// Copyright 2026 The INTACT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INTACT_RESOURCES_HPP_
#define INTACT_RESOURCES_HPP_

#include <optional>
#include <string_view>

namespace intact::resources {

/// Looks up a resource file compiled into the library, by its path relative
/// to the resources/ directory (e.g. "prompts/attack_user_target.txt").
std::optional<std::string_view> find(std::string_view name);

}  // namespace intact::resources

#endif  // INTACT_RESOURCES_HPP_
