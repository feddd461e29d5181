// High-precision reference values for J0, Y0, J1, Y1, generated with an
// arbitrary-precision library (mpmath, 60-digit working precision; see
// tests/tools/gen_bessel_reference.py). Frozen here at 25 significant digits.
#ifndef WAVEBOUND_TESTS_BESSEL_REFERENCE_HPP
#define WAVEBOUND_TESTS_BESSEL_REFERENCE_HPP

namespace testref {

struct BesselRow {
  double x, j0, y0, j1, y1;
};

inline constexpr BesselRow kBesselReference[] = {
    {0.0001000000000000000000000000, 0.9999999975000000015625000, -5.937289069709337016746509, 0.00004999999993750000002604167, -6366.198036455761626333854},
    {0.001000000000000000000000000, 0.9999997500000156249995660, -4.471416611375923268980289, 0.0004999999375000026041666124, -636.6221672311394280743732},
    {0.001778279410038922801225421, 0.9999992094307412078914418, -4.104946340406218766671955, 0.0008891393535561794660011209, -358.0015393299111538135243},
    {0.003162277660168379331998894, 0.9999975000015624995659723, -3.738471351758004700159764, 0.001581136853661475570398135, -201.3232627606210964020065},
    {0.005623413251903490803949510, 0.9999920943214745653265133, -3.371982799097280800180890, 0.002811695511720076954402967, -113.2191593856724300772130},
    {0.01000000000000000000000000, 0.9999750001562495659729004, -3.005455637083645957778858, 0.004999937500260416124132623, -63.67859628206065637429662},
    {0.01778279410038922801225421, 0.9999209446209820654210611, -2.638819930084640409877491, 0.008891045591497275492746019, -35.82605475419985151134291},
    {0.03162277660168379331998894, 0.9997500156245659790038384, -2.271883834459773111868361, 0.01580941195965355653247695, -20.17264483527826529885969},
    {0.05623413251903490803949510, 0.9992095868212334198583660, -1.904133508599095446159448, 0.02810595347753877108305208, -11.38339340422284994037048},
    {0.1000000000000000000000000, 0.9975015620660400322812869, -1.534238651350366844122399, 0.04993752603624199755633655, -6.458951094702026987702053},
    {0.1778279410038922801225421, 0.9921099171311951360199407, -1.158932971059685591180433, 0.08856296996232940704913917, -3.711901823246233435075571},
    {0.3162277660168379331998894, 0.9751558166497129273073150, -0.7709303079247532532189996, 0.1561456774338604724077653, -2.187902572016427440445718},
    {0.5000000000000000000000000, 0.9384698072408129042284047, -0.4445187335067065571483985, 0.2422684576748738863839546, -1.471472392670243069188585},
    {0.5623413251903490803949510, 0.9224919009351897149429222, -0.3572943774137496742392856, 0.2702018983611307995370775, -1.331859337768004490638827},
    {1.000000000000000000000000, 0.7651976865579665514497175, 0.08825696421567695798292677, 0.4400505857449335159596822, -0.7812128213002887165471500},
    {1.778279410038922801225421, 0.3526126077820775132716129, 0.4724313418126259796629550, 0.5810523177232062644994585, -0.2367762197597095537424464},
    {3.162277660168379331998894, -0.3100447889863826299324383, 0.3208977860678688957777567, 0.2764207821365367079067085, 0.3632185910150254761596977},
    {5.623413251903490803949510, 0.03477428974367084267139457, -0.3340252609201830916525189, -0.3322193487273953531508205, -0.06439034981295614100630662},
    {7.900000000000000000000000, 0.1943618448412783175629412, 0.2065209481443757040257273, 0.2191793999217511440789099, -0.1817210772805732091969268},
    {8.100000000000000000000000, 0.1475174540443775823307476, 0.2380913287022348559332445, 0.2476077669815929181828431, -0.1331487959524958357211078},
    {9.300000000000000000000000, -0.1576551899434029753961350, 0.2085700676452372858417559, 0.2004139278437023386765926, 0.1690613070614150044660482},
    {10.00000000000000000000000, -0.2459357644513483351977609, 0.05567116728359939142445988, 0.04347274616886143666974877, 0.2490154242069538839232835},
    {11.00000000000000000000000, -0.1711903004071960883458273, -0.1688473238920795418163433, -0.1767852989567215011377311, 0.1637055374149428543213364},
    {11.50000000000000000000000, -0.06765394811166522843243136, -0.2252321116911878653899986, -0.2283786206653234746143425, 0.05794254714300082167135646},
    {12.00000000000000000000000, 0.04768931079683353662381169, -0.2252373126343614336876851, -0.2234471044906276123676977, -0.05709921826089652105041527},
    {12.50000000000000000000000, 0.1468840547004211023064051, -0.1712143068446692873495982, -0.1654838046147597184587623, -0.1538382565375011800847291},
    {13.00000000000000000000000, 0.2069261023770678109966475, -0.07820786452787591102109171, -0.07031805212177837115676940, -0.2100814084206935059247071},
    {17.78279410038922801225421, -0.05380041460363231454511652, -0.1813593097842179661641510, -0.1829421758573064569922567, 0.04872627690633623652460376},
    {31.62277660168379331998894, 0.1184804105160123098550707, -0.07804847807478116329936981, -0.07618534601963459741839680, -0.1197289448237066143942105},
    {50.00000000000000000000000, 0.05581232766925181500475048, -0.09806499547007707902921145, -0.09751182812517513766145895, -0.05679566856201476794181955},
    {56.23413251903490803949510, 0.04805696129594620749979835, -0.09492607410321485254187154, -0.09450256475684843863048221, -0.04890281873471566103517208},
    {100.0000000000000000000000, 0.01998585030422312242422839, -0.07724431336508315225422822, -0.07714535201411215803268549, -0.02037231200275979330470393},
    {177.8279410038922801225421, 0.02646315250584377936203953, 0.05366249596753030584048280, 0.05373711410976006329275724, -0.02631237510270787524570578},
    {316.2277660168379331998894, 0.01274801391649603511281632, 0.04301922952525024777092705, 0.04303943962786749364115623, -0.01268001064706469150618326},
    {562.3413251903490803949510, -0.02369674387556753030499981, 0.02388622438616175556739496, 0.02386516412877178175543918, 0.02371799141619636968308690},
    {1000.000000000000000000000, 0.02478668615242017456133073, 0.004715917977622813399773261, 0.004728311907089523917576072, -0.02478433129235177891486236},
    {10000.00000000000000000000, -0.007096160353388801477265164, 0.003647805558986605886688720, 0.003647450755529580344117261, 0.007096342752536495135018572},
};

// Regularized diagonal of the Green's operator for delta=1, k=2*pi, h=1/60,
// i.e. 4/(pi k^2) - (i h/k) H1(k h/2), same precision pipeline as above.
inline constexpr double kGreenDiagRe = -0.0001575663761762159113481005;
inline constexpr double kGreenDiagIm = -0.00006942064892687730156414594;

}  // namespace testref

#endif
