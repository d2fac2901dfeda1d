#ifndef AFROMT_REGISTRY_DATA_HPP
#define AFROMT_REGISTRY_DATA_HPP

// Built-in copy of data/registry/languages.tsv and data/registry/sets.tsv.
// tests/lang_registry_test.cpp checks that the two stay identical.

#include <string_view>

namespace afromt::registry_data {

inline constexpr std::string_view kLanguagesTsv = R"AFROMT(# afromt language registry v1: code, name, family, script, is_african
aar	Afar	Afro-Asiatic	Latin	1
ach	Acholi	Nilo-Saharan	Latin	1
afr	Afrikaans	Indo-European	Latin	1
aka	Akan	Niger-Congo	Latin	1
amh	Amharic	Afro-Asiatic	Ethiopic	1
ara	Arabic	Afro-Asiatic	Arabic	0
bam	Bambara	Niger-Congo	Latin	1
bas	Bassa	Niger-Congo	Latin	1
bem	Bemba	Niger-Congo	Latin	1
btg	Bhete	Niger-Congo	Latin	1
eng	English	Indo-European	Latin	0
ewe	Ewe	Niger-Congo	Latin	1
fan	Fang	Niger-Congo	Latin	1
fon	Fon	Niger-Congo	Latin	1
fra	French	Indo-European	Latin	0
gez	Ge'ez	Afro-Asiatic	Ethiopic	1
hau	Hausa	Afro-Asiatic	Latin	1
ibo	Ibo	Niger-Congo	Latin	1
kau	Kanuri	Nilo-Saharan	Latin	1
kbp	Kabiye	Niger-Congo	Latin	1
kin	Kinyawanda	Niger-Congo	Latin	1
kon	Kongo	Niger-Congo	Latin	1
lgg	Lugbara	Nilo-Saharan	Latin	1
lin	Lingala	Niger-Congo	Latin	1
lug	Luganda	Niger-Congo	Latin	1
mlg	Malagasy	Austronesian	Latin	1
nnb	Nande	Niger-Congo	Latin	1
nya	Chichewa	Niger-Congo	Latin	1
nyn	Nyankore	Niger-Congo	Latin	1
orm	Oromo	Afro-Asiatic	Latin	1
pcm	Nigerian Pidgin	Creole	Latin	1
som	Somali	Afro-Asiatic	Latin	1
sot	Sesotho	Niger-Congo	Latin	1
ssw	Siswati	Niger-Congo	Latin	1
swa	Swahili	Niger-Congo	Latin	1
swc	Swahili Congo	Niger-Congo	Latin	1
teo	Ateso	Nilo-Saharan	Latin	1
tir	Tigrinya	Afro-Asiatic	Ethiopic	1
tsn	Tswana	Niger-Congo	Latin	1
tso	Tsonga	Niger-Congo	Latin	1
twi	Twi	Niger-Congo	Latin	1
wal	Wolaytta	Afro-Asiatic	Latin	1
wol	Wolof	Niger-Congo	Latin	1
xho	Xhosa	Niger-Congo	Latin	1
yor	Yoruba	Niger-Congo	Latin	1
zul	Zulu	Niger-Congo	Latin	1
)AFROMT";

inline constexpr std::string_view kSetsTsv = R"AFROMT(# afromt language sets v1: set-name, comma-separated codes
spbleu101_supported	afr,amh,ewe,fon,hau,ibo,kin,lin,lug,nya,orm,som,sot,ssw,swa,tir,tsn,tso,twi,wol,xho,yor,zul
)AFROMT";

}  // namespace afromt::registry_data

#endif  // AFROMT_REGISTRY_DATA_HPP
