// Generated by tools/mint_rs_coefficients.py -- do not edit by hand.
//
// Chebyshev coefficients on p in [0,1] (x = 2p-1) for the Riemann-Siegel
// correction functions C_0..C_4.  See the script header for the extraction
// procedure and its validation.

#include "zcurve/rs_eval.hpp"

namespace zcurve::detail {

const double kRsC0Cheb[40] = {
    6.42667286239768432e-01, 1.06195505280505969e-17, 2.71972999997855069e-01, -3.19123439308495980e-18,
    1.07386058193402849e-02, 1.13486028378610347e-18, -1.37438152963366140e-03, -2.29005750908026645e-19,
    -1.24682218803206764e-04, 8.40760332307517244e-21, -5.76459970678307437e-07, 9.78033490545100947e-21,
    2.72806742958045356e-07, -2.53798291907998930e-21, 8.07795305950053531e-09, 9.46870681444575502e-23,
    -2.08846080688707754e-10, 4.26633515538925710e-23, -1.31155618547399381e-11, -2.35817941182079834e-24,
    -1.42079872279596756e-14, -3.54592341104775575e-25, 1.02717013579333357e-14, 1.06473611395172654e-26,
    1.39745988194588414e-16, 1.54220252869655390e-27, -4.48411873396174018e-18, -1.30038419239774993e-29,
    -1.18305995736970546e-19, -3.66269528429623488e-30, 9.38986956064447382e-22, -1.80449149272922675e-32,
    5.60182284708868245e-23, 5.12706153825342132e-33, 1.00235438716551815e-25, 7.20658188612828215e-35,
    -1.75929855787445585e-26, -4.48805507404786383e-36, -1.48545530582111618e-28, -9.95525864548243635e-38
};

const double kRsC1Cheb[40] = {
    1.01159219366752169e-16, 1.06979139209981873e-02, 1.91976581570013915e-16, 1.71706512433793326e-02,
    -3.01049185763074723e-17, 2.79321114978795621e-03, 1.53377610436638401e-17, -3.63756537191711583e-05,
    -5.48496362207897126e-18, -2.71089552311547164e-05, 1.13905306052698017e-18, -1.04837498667970846e-06,
    -6.91101530639924567e-20, 5.88646716664262883e-08, -2.54175204249789463e-20, 4.32296726845975915e-09,
    4.80572463433934030e-21, -1.13695916076017869e-11, 1.23312152676777284e-22, -6.69983390928560116e-12,
    -5.29558684343809926e-23, -1.00799976367489074e-13, -4.56427301284587371e-25, 5.15248800439210911e-15,
    2.47963269411163155e-25, 1.52169544019953057e-16, 1.93354082134350578e-27, -1.86194647746260497e-18,
    -6.37933161107009474e-28, -1.13018460183832334e-19, -5.41612262104632412e-30, -9.65030566120916161e-23,
    1.05698356189325792e-30, 5.22661045329009262e-23, 9.91150160510847460e-33, 4.63004872825974264e-25,
    -1.24146396584109793e-33, -1.60181035676137742e-26, -1.33466156821585853e-35, -2.65820452727253411e-28
};

const double kRsC2Cheb[40] = {
    3.14611585397406692e-03, 8.75824880314458615e-13, -2.30878388456273774e-03, -2.63654387620419555e-13,
    5.76982076716476487e-05, 9.36891374823244009e-14, 3.52388620234196930e-04, -1.89152799799252041e-14,
    2.52466674595958553e-05, 7.00109342993916532e-16, -3.44282119739067914e-06, 8.05712463911028087e-16,
    -3.53507455647762014e-07, -2.09338759071075773e-16, 3.73083018759080694e-09, 7.84344502052635391e-18,
    1.27769518559639246e-09, 3.51437316305956637e-18, 2.18746161942313492e-11, -1.94724900617395467e-19,
    -1.91414108783620811e-12, -2.91931986541116409e-20, -6.56288310432237804e-14, 8.79062053515115171e-22,
    1.25860087770229374e-15, 1.26950276846579558e-22, 8.14007663515914785e-17, -1.07508646138422076e-24,
    -5.42386340628755500e-20, -3.01458744569637288e-25, -5.79698014463839566e-20, -1.48346867267080306e-27,
    -5.38291842598530614e-22, 4.21805620545269107e-28, 2.60100805604875346e-23, 5.93703456109819709e-30,
    4.66696918953156098e-25, -3.68866595074226818e-31, -7.28884852842994185e-27, -8.20211940121750459e-33
};

const double kRsC3Cheb[40] = {
    1.03329961331664701e-12, 7.12324793527060053e-05, 2.70054156998344748e-12, 2.32343077948992213e-04,
    -3.71672113194031068e-13, -1.29299129322937406e-04, 1.97615901727051591e-13, 1.80744982045203833e-05,
    -7.66676099179047265e-14, 6.52618512067282336e-06, 1.75241386323909477e-14, -1.16963729967477522e-07,
    -1.54735623332852488e-15, -7.34947414603455696e-08, -2.72856014747665128e-16, -1.77509175116302076e-09,
    7.04119295684200579e-17, 2.55554963838064773e-10, -3.25054134643419509e-19, 1.13766550278142180e-11,
    -7.06359925695539690e-19, -3.34983630057397790e-13, 1.24850708821045630e-20, -2.55374625057509666e-14,
    3.33734183854070115e-21, 6.76530070048882538e-17, -5.70600751302838481e-23, 2.97689862876103413e-17,
    -9.43856078479754615e-24, 2.99550574201652730e-19, 1.24879258373718396e-25, -2.04610477164393208e-20,
    1.79907504499467288e-26, -4.08732499505656147e-22, -1.39399056453460320e-28, 8.44704976665115808e-24,
    -2.41718764233685018e-29, 2.83061769941911447e-25, 4.77228906372463736e-32, -1.71547911733616531e-27
};

const double kRsC4Cheb[40] = {
    1.67657418778949870e-04, 4.40255447605049998e-09, -2.27287812341812206e-04, -1.32788533061782340e-09,
    6.47738870212995763e-05, 4.71430531907530272e-10, -8.49220887221437618e-06, -9.52181635844723674e-11,
    -2.61613725239604239e-06, 3.55073602479365156e-12, 8.33675648077125235e-07, 4.04569608769632350e-12,
    6.32471304574166435e-08, -1.05224198890878158e-12, -1.00599398816480000e-08, 3.95462749912271546e-14,
    -7.82271020643656969e-10, 1.76475420639717033e-14, 3.16766680343309388e-11, -9.79018310212870555e-16,
    3.50072529690547238e-12, -1.46557535080541376e-16, -1.43160286957324371e-14, 4.41450614753951423e-18,
    -7.26954944419215443e-15, 6.37280725278256935e-19, -8.78000901381798718e-17, -5.37617281885109531e-21,
    8.15069998725151559e-18, -1.51285470782425710e-21, 1.92071418129301449e-19, -7.53504189815775112e-24,
    -5.17658095726186646e-21, 2.11514553737113245e-24, -1.97661501862560107e-22, 2.99613918970279060e-26,
    1.60731655469923319e-24, -1.84657756610868727e-27, 1.26576122680310323e-25, -4.13294262813079898e-29
};

const int kRsChebCount = 40;
const double* const kRsChebTables[5] = {
    kRsC0Cheb, kRsC1Cheb, kRsC2Cheb, kRsC3Cheb, kRsC4Cheb
};

}  // namespace zcurve::detail
