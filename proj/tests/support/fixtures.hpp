#pragma once

#include <array>

namespace svarkit::testing {

// Stationary AR(1) (phi 0.6) around 5, 60 points, numpy default_rng(20240601).
inline constexpr std::array<double, 60> kAr1Sample{
    5.0, 5.647906204173187, 5.858064516884202, 4.871818099389678, 3.744832211128675,
    4.102208919781939, 5.664783748062458, 6.732454061740711, 6.947773840332337, 6.515228734044938,
    7.509171915365311, 7.738342965118961, 6.42268827514425, 4.791648323884713, 4.510420204361748,
    4.286233560421875, 5.259249248948314, 3.256433586808796, 3.7624914627795683, 5.928717006799879,
    4.636946448232033, 4.023704249088775, 4.32996184508367, 3.18015602008743, 3.7784806186253617,
    4.251435475633356, 4.546206102420166, 3.7392097555601858, 3.8776954411833717,
    4.980434818968768, 4.273710173686676, 5.111423584774301, 5.7223665212491905, 4.00641930000084,
    3.7585453490681267, 4.91043984303966, 5.439758698991847, 5.443230422840317, 4.917320724361851,
    5.058951237136352, 6.910143903681758, 5.924630854277053, 6.134428440310356, 5.263908609002052,
    4.960019116695223, 5.624038239874295, 4.445420679122746, 4.424834948341331, 4.044593190617139,
    3.568047743343847, 4.316581732818958, 5.82977214333897, 5.719270344781509, 5.049795647922861,
    3.57875742100757, 4.966211409862644, 5.1901859271932835, 4.482797909490174, 5.551114567584329,
    6.9048974581522895};

// Random walk with AR(1) (phi 0.6) increments, 120 points, numpy default_rng(7).
inline constexpr std::array<double, 120> kIntegratedAr1Sample{
    10.0, 10.001230153357483, 10.300713782880441, 10.206266105232, 9.259005659885661,
    8.235978607506134, 6.630515821081957, 5.727381751824888, 6.525716555825181, 6.5125109196740265,
    5.884112638163393, 5.996915719442212, 6.421484576369564, 6.781640139523874, 6.067265432708255,
    5.60938878615561, 6.02996599268231, 4.9380977693132495, 3.825361074251594, 1.2564963174137578,
    -1.5743602764739215, -5.114609270598262, -7.473849798147548, -10.156840596120823,
    -11.495370716083087, -12.14173770143622, -12.716488837278053, -15.578099229603666,
    -17.83375836084567, -19.235654784991947, -19.963483653476406, -21.930316740072474,
    -23.588169868064043, -25.561400822915623, -27.55417663525217, -27.68894349926802,
    -28.577338293009426, -29.142896874199792, -28.597842155530834, -28.854409757072766,
    -29.120052267582082, -29.16897363063819, -29.134544674216798, -30.33894312678165,
    -30.985441967943558, -30.01451785089916, -30.979108058801003, -30.698479495520516,
    -30.410748331855643, -30.879580027763936, -29.16046249896649, -27.36673226960331,
    -27.489783034090628, -27.489097264011555, -26.911996218293922, -26.754517716214096,
    -25.97712034777099, -25.577199246854548, -24.669999025470354, -22.687156300983688,
    -22.17311291729734, -21.66154827669592, -21.817917068873484, -21.78446993295419,
    -22.951596179252753, -24.231173523534565, -25.19511590290815, -24.87471745843189,
    -23.537256384292, -24.058307532292325, -25.165580587079567, -25.18304099737849,
    -27.185937027732336, -28.850844510897012, -29.947075926465907, -29.347799798520427,
    -28.298830221182385, -27.996661895001758, -28.183936793393336, -28.546497132946207,
    -27.24050393622177, -26.884932960759976, -26.975270763847625, -26.676884378414954,
    -26.618622992241804, -26.780950388503634, -27.992413969411793, -28.730813585995236,
    -29.61743457891972, -28.983279398484186, -27.9496977875217, -27.353692433954144,
    -26.32770819854627, -26.05198720901469, -24.834428256868797, -24.109292446252887,
    -23.090828605702924, -23.770643546696434, -23.831852462414112, -25.55678192921126,
    -28.62706855422948, -30.773717406951853, -32.96163432618387, -34.11033168201086,
    -32.554793469021, -32.45319372263917, -33.016177461253974, -33.14856375835816,
    -32.734982245208315, -32.66323940322417, -32.8261240282869, -32.22139184820399,
    -31.338644903120347, -31.842672568143847, -32.22427048577379, -32.41794238769029,
    -33.588630150889294, -34.031203708134335, -35.1547043196579, -34.856737978655};

}  // namespace svarkit::testing
