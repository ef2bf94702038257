// src/language.cpp
//
// Copyright 2026 The uniasr Authors
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

#include <string_view>
#include <unordered_map>
#include <vector>

#include "uniasr/corpus.hpp"
#include "uniasr/error.hpp"

namespace uniasr {

namespace {

// ISO-639-1 codes where available, ISO-639-3 otherwise. The seen set is
// the 102 training/evaluation languages; the unseen set is the 25
// zero-shot evaluation languages.
const std::vector<LanguageInfo>& registry() {
  static const std::vector<LanguageInfo> kEntries = {
      {"af", "Afrikaans", true},
      {"am", "Amharic", true},
      {"ar", "Arabic", true},
      {"as", "Assamese", true},
      {"ast", "Asturian", true},
      {"az", "Azerbaijani", true},
      {"be", "Belarusian", true},
      {"bg", "Bulgarian", true},
      {"bn", "Bengali", true},
      {"bs", "Bosnian", true},
      {"ca", "Catalan", true},
      {"ceb", "Cebuano", true},
      {"ku", "Sorani-Kurdish", true},
      {"cmn", "Mandarin Chinese", true},
      {"cs", "Czech", true},
      {"cy", "Welsh", true},
      {"da", "Danish", true},
      {"de", "German", true},
      {"el", "Greek", true},
      {"en", "English", true},
      {"es", "Spanish", true},
      {"et", "Estonian", true},
      {"fa", "Persian", true},
      {"ff", "Fula", true},
      {"fi", "Finnish", true},
      {"fil", "Filipino", true},
      {"fr", "French", true},
      {"ga", "Irish", true},
      {"gl", "Galician", true},
      {"gu", "Gujarati", true},
      {"ha", "Hausa", true},
      {"he", "Hebrew", true},
      {"hi", "Hindi", true},
      {"hr", "Croatian", true},
      {"hu", "Hungarian", true},
      {"hy", "Armenian", true},
      {"id", "Indonesian", true},
      {"ig", "Igbo", true},
      {"is", "Icelandic", true},
      {"it", "Italian", true},
      {"ja", "Japanese", true},
      {"jv", "Javanese", true},
      {"ka", "Georgian", true},
      {"kam", "Kamba", true},
      {"kea", "Kabuverdianu", true},
      {"kk", "Kazakh", true},
      {"km", "Khmer", true},
      {"kn", "Kannada", true},
      {"ko", "Korean", true},
      {"ky", "Kyrgyz", true},
      {"lb", "Luxembourgish", true},
      {"lg", "Ganda", true},
      {"ln", "Lingala", true},
      {"lo", "Lao", true},
      {"lt", "Lithuanian", true},
      {"luw", "Luo", true},
      {"lv", "Latvian", true},
      {"mi", "Maori", true},
      {"mk", "Macedonian", true},
      {"ml", "Malayalam", true},
      {"mn", "Mongolian", true},
      {"mr", "Marathi", true},
      {"ms", "Malay", true},
      {"mt", "Maltese", true},
      {"my", "Burmese", true},
      {"no", "Norwegian", true},
      {"ne", "Nepali", true},
      {"nl", "Dutch", true},
      {"nso", "Northern-Sotho", true},
      {"ny", "Nyanja", true},
      {"oc", "Occitan", true},
      {"om", "Oromo", true},
      {"or", "Oriya", true},
      {"pa", "Punjabi", true},
      {"pl", "Polish", true},
      {"ps", "Pashto", true},
      {"pt", "Portuguese", true},
      {"ro", "Romanian", true},
      {"ru", "Russian", true},
      {"sd", "Sindhi", true},
      {"sk", "Slovak", true},
      {"sl", "Slovenian", true},
      {"sn", "Shona", true},
      {"so", "Somali", true},
      {"sr", "Serbian", true},
      {"sv", "Swedish", true},
      {"sw", "Swahili", true},
      {"ta", "Tamil", true},
      {"te", "Telugu", true},
      {"tg", "Tajik", true},
      {"th", "Thai", true},
      {"tr", "Turkish", true},
      {"uk", "Ukrainian", true},
      {"umb", "Umbundu", true},
      {"ur", "Urdu", true},
      {"uz", "Uzbek", true},
      {"vi", "Vietnamese", true},
      {"wo", "Wolof", true},
      {"xh", "Xhosa", true},
      {"yo", "Yoruba", true},
      {"yue", "Cantonese Chinese", true},
      {"zu", "Zulu", true},
      {"ab", "Abkhazian", false},
      {"sq", "Albanian", false},
      {"bas", "Basaa", false},
      {"ba", "Bashkir", false},
      {"eu", "Basque", false},
      {"br", "Breton", false},
      {"cv", "Chuvash", false},
      {"mhr", "Eastern Mari", false},
      {"myv", "Erzya", false},
      {"eo", "Esperanto", false},
      {"gn", "Guarani", false},
      {"cnh", "Hakha Chin", false},
      {"ia", "Interlingua", false},
      {"rw", "Kinyarwanda", false},
      {"ltg", "Latgalian", false},
      {"nn", "Norwegian Nynorsk", false},
      {"rm", "Romansh", false},
      {"tt", "Tatar", false},
      {"tok", "Toki Pona", false},
      {"tk", "Turkmen", false},
      {"ug", "Uighur", false},
      {"hsb", "Upper Sorbian", false},
      {"fy", "Western Frisian", false},
      {"mrj", "Western Mari", false},
      {"sah", "Yakut", false},
  };
  return kEntries;
}

const std::unordered_map<std::string_view, const LanguageInfo*>& index() {
  static const auto* kIndex = [] {
    auto* m = new std::unordered_map<std::string_view, const LanguageInfo*>();
    for (const LanguageInfo& info : registry()) m->emplace(info.code, &info);
    return m;
  }();
  return *kIndex;
}

}  // namespace

const std::vector<LanguageInfo>& all_languages() { return registry(); }

const LanguageInfo& lookup_language(std::string_view code) {
  const auto it = index().find(code);
  if (it == index().end()) {
    throw UnknownLanguageError("unknown language code: " + std::string(code));
  }
  return *it->second;
}

}  // namespace uniasr
