// Copyright 2026 The AccentForge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ACCENTFORGE_GROUPS_HPP_
#define ACCENTFORGE_GROUPS_HPP_

#include <array>
#include <optional>
#include <string>

namespace accentforge {

// The 18 native languages with their speaker-group assignment (1-5),
// region of origin and family.

struct LanguageInfo {
  const char* name;
  int group;
  const char* region;
  const char* family;
};

inline const std::array<LanguageInfo, 18>& known_languages() {
  static const std::array<LanguageInfo, 18> kLanguages = {{
      {"Dimasa", 1, "East", "Tibeto-Burman"},
      {"Mog", 1, "East", "Tibeto-Burman"},
      {"Maithili", 1, "East", "Indo-Aryan"},
      {"Oriya", 1, "East", "Indo-Aryan"},
      {"Bengali", 1, "East and Northeast", "Indo-Aryan"},
      {"Assamese", 1, "Northeast", "Indo-Aryan"},
      {"Nepali", 1, "Northeast", "Indo-Aryan"},
      {"Punjabi", 2, "North", "Indo-Aryan"},
      {"Marwari", 2, "North", "Indo-Aryan"},
      {"Hindi", 2, "North and Central", "Indo-Aryan"},
      {"Malwi", 2, "Central", "Indo-Aryan"},
      {"Gujarati", 3, "West", "Indo-Aryan"},
      {"Marathi", 3, "West", "Indo-Aryan"},
      {"Konkani", 3, "West", "Indo-Aryan"},
      {"Kannada", 4, "Upper South", "Dravidian"},
      {"Telugu", 4, "Upper South", "Dravidian"},
      {"Malayalam", 5, "Lower South", "Dravidian"},
      {"Tamil", 5, "Lower South", "Dravidian"},
  }};
  return kLanguages;
}

inline const LanguageInfo* find_language(const std::string& name) {
  for (const auto& info : known_languages())
    if (name == info.name) return &info;
  return nullptr;
}

inline std::optional<int> group_of(const std::string& language) {
  const LanguageInfo* info = find_language(language);
  if (!info) return std::nullopt;
  return info->group;
}

inline const char* group_region(int group) {
  switch (group) {
    case 1: return "Northeast and East";
    case 2: return "North and Central";
    case 3: return "West";
    case 4: return "Upper South";
    case 5: return "Lower South";
  }
  return "?";
}

constexpr int kGroupCount = 5;

}  // namespace accentforge

#endif  // ACCENTFORGE_GROUPS_HPP_
