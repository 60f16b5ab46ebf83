from decimal import Decimal
from fractions import Fraction

from django.test import SimpleTestCase, tag

from voting.audits import (
    DISTANCE_KINDS,
    added_blocker_audit,
    bicameral_meet,
    bloc_audit,
    distance_study,
    donation_audit,
    euclidean,
    merge_bloc,
    neutrality_gap,
)
from voting.exceptions import InvalidInputError, NotWeightedError
from voting.games import classify_voters, format_game, parse_game
from voting.indices import IndexKind

F = Fraction

ALL_KINDS = [IndexKind.BZI, IndexKind.SSI, IndexKind.MSRI, IndexKind.AWI, IndexKind.ARI, IndexKind.AWTI, IndexKind.ARTI]


def tolerance(printed):
    # half a unit in the last printed place; integers are exact
    places = len(printed.partition('.')[2])
    if not places:
        return 1e-9
    return 0.5 * 10 ** -places + 1e-9


def assert_published(case, vectors, table):
    for kind, printed in table.items():
        for voter, text in enumerate(printed.split(), start=1):
            with case.subTest(index=kind.value, voter=voter):
                case.assertAlmostEqual(float(vectors[kind].power(voter)), float(text), delta=tolerance(text))


class BlocTests(SimpleTestCase):

    def test_merge_keeps_absorbed_voter_as_dummy(self):
        merged = merge_bloc(parse_game('[3;1,1,1,1]'), 3, 4)
        self.assertEqual(format_game(merged), '[3;1,1,2,0]')
        self.assertEqual(classify_voters(merged).dummies, frozenset({4}))

    def test_bloc_gains_power(self):
        report = bloc_audit(parse_game('[3;1,1,1,1]'), 3, 4, IndexKind.AWTI)
        self.assertEqual(report.measures[IndexKind.AWTI]['bloc_power'], F(2, 3))
        self.assertEqual(report.measures[IndexKind.AWTI]['neutrality_gap'], F(1, 6))
        self.assertFalse(report.flags[IndexKind.AWTI])
        self.assertEqual(report.kinds, [IndexKind.AWTI])

    def test_neutrality_gap(self):
        self.assertEqual(neutrality_gap(parse_game('[3;1,1,1,1]'), 3, 4, 'awti'), F(1, 6))

    def test_invalid_voters(self):
        game = parse_game('[3;1,1,1,1]')
        with self.assertRaises(InvalidInputError):
            bloc_audit(game, 2, 2)
        with self.assertRaises(InvalidInputError):
            bloc_audit(game, 1, 5)

    def test_rows(self):
        report = bloc_audit(parse_game('[3;1,1,1,1]'), 3, 4, [IndexKind.AWTI, IndexKind.SSI])
        rows = report.rows(places=3)
        self.assertEqual([row['index'] for row in rows], ['awti', 'ssi'])
        self.assertEqual(rows[0]['after'], '[3;1,1,2,0]')
        self.assertEqual(rows[0]['after_power'], '0.167 0.167 0.667 0.000')
        self.assertEqual(rows[0]['neutrality_gap'], '1/6')
        self.assertEqual(report.to_json()['indices']['awti']['bloc_power'], '2/3')

    @tag('slow')
    def test_bloc_paradox_under_average_weight_index(self):
        report = bloc_audit(parse_game('[37;25,20,17,15,9,6,2,1]'), 7, 8, ALL_KINDS)
        assert_published(self, report.before_power, {
            IndexKind.BZI: '0.274 0.226 0.188 0.168 0.063 0.053 0.0240 0.005',
            IndexKind.SSI: '0.287 0.230 0.196 0.163 0.054 0.046 0.0202 0.004',
            IndexKind.MSRI: '0.262 0.213 0.180 0.148 0.082 0.066 0.0328 0.016',
            IndexKind.AWI: '0.267 0.226 0.196 0.140 0.082 0.056 0.0283 0.006',
            IndexKind.ARI: '0.266 0.224 0.194 0.140 0.082 0.057 0.0288 0.007',
            IndexKind.AWTI: '0.267 0.226 0.196 0.140 0.082 0.056 0.0283 0.006',
            IndexKind.ARTI: '0.266 0.224 0.194 0.140 0.082 0.057 0.0288 0.007',
        })
        assert_published(self, report.after_power, {
            IndexKind.BZI: '0.282 0.223 0.185 0.165 0.068 0.049 0.0291 0',
            IndexKind.SSI: '0.293 0.226 0.193 0.160 0.060 0.043 0.0262 0',
            IndexKind.MSRI: '0.273 0.212 0.182 0.152 0.091 0.061 0.0303 0',
            IndexKind.AWI: '0.272 0.225 0.197 0.140 0.087 0.051 0.0281 0',
            IndexKind.ARI: '0.272 0.224 0.195 0.141 0.087 0.052 0.0284 0',
            IndexKind.AWTI: '0.272 0.225 0.197 0.140 0.087 0.051 0.0281 0',
            IndexKind.ARTI: '0.272 0.224 0.195 0.141 0.087 0.052 0.0284 0',
        })
        self.assertAlmostEqual(float(report.measures[IndexKind.AWI]['bloc_power']), 0.0281, delta=5e-5)
        flagged = {kind for kind in ALL_KINDS if report.flags[kind]}
        self.assertEqual(flagged, {IndexKind.MSRI, IndexKind.AWI, IndexKind.ARI, IndexKind.AWTI, IndexKind.ARTI})


class DonationTests(SimpleTestCase):

    def test_donor_gains_under_average_weight_index(self):
        report = donation_audit(parse_game('[13;9,4,3,2,1]'), 1, 2, 1, ALL_KINDS)
        self.assertEqual(format_game(report.after), '[13;8,5,3,2,1]')
        assert_published(self, report.before_power, {
            IndexKind.BZI: '0.524 0.238 0.143 0.048 0.048',
            IndexKind.SSI: '0.617 0.200 0.117 0.033 0.033',
            IndexKind.MSRI: '0.417 0.250 0.167 0.083 0.083',
            IndexKind.AWI: '0.518 0.247 0.138 0.048 0.048',
            IndexKind.ARI: '0.501 0.247 0.143 0.054 0.054',
            IndexKind.AWTI: '0.548 0.258 0.123 0.035 0.035',
            IndexKind.ARTI: '0.522 0.257 0.132 0.045 0.045',
        })
        assert_published(self, report.after_power, {
            IndexKind.BZI: '0.500 0.300 0.100 0.100 0',
            IndexKind.SSI: '0.583 0.250 0.083 0.083 0',
            IndexKind.MSRI: '0.429 0.286 0.143 0.143 0',
            IndexKind.AWI: '0.535 0.270 0.098 0.098 0',
            IndexKind.ARI: '0.513 0.273 0.107 0.107 0',
            IndexKind.AWTI: '0.602 0.249 0.075 0.075 0',
            IndexKind.ARTI: '0.558 0.258 0.092 0.092 0',
        })
        self.assertTrue(report.flags[IndexKind.AWI])
        self.assertFalse(report.flags[IndexKind.SSI])
        self.assertFalse(report.flags[IndexKind.BZI])

    def test_zero_donation_changes_nothing(self):
        report = donation_audit(parse_game('[3;2,1,1]'), 1, 2, 0, 'awi')
        self.assertEqual(report.before_power[IndexKind.AWI], report.after_power[IndexKind.AWI])
        self.assertFalse(report.flags[IndexKind.AWI])

    def test_amount_bounds(self):
        game = parse_game('[3;2,1,1]')
        with self.assertRaises(InvalidInputError):
            donation_audit(game, 2, 1, 2)
        with self.assertRaises(InvalidInputError):
            donation_audit(game, 1, 2, -1)
        with self.assertRaises(InvalidInputError):
            donation_audit(game, 1, 1, 1)


class MeetTests(SimpleTestCase):

    def test_added_blocker_meet(self):
        meet, joined = bicameral_meet(parse_game('[3;2,1,1]'), parse_game('[5;5]'))
        self.assertEqual(format_game(joined), '[8;2,1,1,5]')
        self.assertEqual(meet, joined)
        self.assertEqual(classify_voters(joined).vetoers, frozenset({1, 4}))

    def test_meet_needing_a_fitted_representation(self):
        # the concatenation [4;3,1,1,1] lets {1,3} win
        meet, joined = bicameral_meet(parse_game('[2;3,1]'), parse_game('[2;1,1]'))
        self.assertEqual(meet, joined)
        for mask in range(1 << 4):
            first = mask & 0b11
            second = mask >> 2
            expected = bool(first & 1) and second == 0b11
            self.assertEqual(joined.is_winning(mask), expected)

    def test_meet_without_weights(self):
        with self.assertRaises(NotWeightedError):
            bicameral_meet(parse_game('[1;1,1]'), parse_game('[1;1,1]'))


class AddedBlockerTests(SimpleTestCase):

    def test_ratios(self):
        kinds = [IndexKind.BZI, IndexKind.SSI, IndexKind.AWI, IndexKind.MSRI]
        report = added_blocker_audit(parse_game('[3;2,1,1]'), 5, kinds)
        self.assertEqual(format_game(report.after), '[8;2,1,1,5]')
        ratios = {kind: report.measures[kind] for kind in kinds}
        self.assertEqual(ratios[IndexKind.BZI], {'ratio_before': 3, 'ratio_after': 3})
        self.assertFalse(report.flags[IndexKind.BZI])
        self.assertEqual(ratios[IndexKind.SSI], {'ratio_before': 4, 'ratio_after': 5})
        self.assertTrue(report.flags[IndexKind.SSI])
        self.assertEqual(ratios[IndexKind.MSRI], {'ratio_before': 2, 'ratio_after': 2})
        self.assertEqual(ratios[IndexKind.AWI]['ratio_before'], F(22, 7))
        self.assertAlmostEqual(float(ratios[IndexKind.AWI]['ratio_after']), 3.8, delta=0.01)
        self.assertTrue(report.flags[IndexKind.AWI])

    def test_published_powers_and_ratios(self):
        report = added_blocker_audit(parse_game('[3;2,1,1]'), 5, ALL_KINDS)
        assert_published(self, report.before_power, {
            IndexKind.BZI: '0.600 0.200 0.200',
            IndexKind.SSI: '0.667 0.167 0.167',
            IndexKind.MSRI: '0.500 0.250 0.250',
            IndexKind.AWI: '0.611 0.194 0.194',
            IndexKind.ARI: '0.583 0.208 0.208',
            IndexKind.AWTI: '0.667 0.167 0.167',
            IndexKind.ARTI: '0.611 0.194 0.194',
        })
        assert_published(self, report.after_power, {
            IndexKind.BZI: '0.375 0.125 0.125 0.375',
            IndexKind.SSI: '0.417 0.083 0.083 0.417',
            IndexKind.MSRI: '0.333 0.167 0.167 0.333',
            IndexKind.AWI: '0.396 0.104 0.104 0.396',
            IndexKind.ARI: '0.383 0.117 0.117 0.383',
            IndexKind.AWTI: '0.375 0.125 0.125 0.375',
            IndexKind.ARTI: '0.361 0.139 0.139 0.361',
        })
        published = {
            IndexKind.BZI: ('3', '3'),
            IndexKind.SSI: ('4', '5'),
            IndexKind.MSRI: ('2', '2'),
            IndexKind.AWI: ('3.143', '3.8'),
            IndexKind.ARI: ('2.8', '3.286'),
            IndexKind.AWTI: ('4', '3'),
            IndexKind.ARTI: ('3.143', '2.6'),
        }
        for kind, (before, after) in published.items():
            with self.subTest(index=kind.value):
                measures = report.measures[kind]
                self.assertAlmostEqual(float(measures['ratio_before']), float(before), delta=tolerance(before))
                self.assertAlmostEqual(float(measures['ratio_after']), float(after), delta=tolerance(after))
                self.assertEqual(report.flags[kind], before != after)

    def test_blocker_weight_must_be_positive(self):
        with self.assertRaises(InvalidInputError):
            added_blocker_audit(parse_game('[3;2,1,1]'), 0)


class DistanceTests(SimpleTestCase):

    def test_euclidean(self):
        squared, distance = euclidean((F(0), F(0)), (F(3, 5), F(4, 5)))
        self.assertEqual(squared, 1)
        self.assertEqual(distance, Decimal('1.000000'))

    def test_study_up_to_three_voters(self):
        table = distance_study(3)
        pairs = len(DISTANCE_KINDS) * (len(DISTANCE_KINDS) - 1) // 2
        self.assertEqual(len(table.rows), 8 * pairs)
        row = table.rows[(table.rows['game'] == '[3;2,1,1]') & (table.rows['pair'] == 'bzi-ssi')].iloc[0]
        self.assertEqual(row['squared'], '1/150')
        symmetric = table.rows[table.rows['game'] == '[2;1,1,1]']
        self.assertTrue((symmetric['distance'] == 0).all())

    def test_summary(self):
        table = distance_study(2, [IndexKind.BZI, IndexKind.AWI])
        self.assertEqual(list(table.summary.columns), ['n_max', 'pair', 'games', 'q01', 'q25', 'q50', 'q75', 'q99'])
        self.assertEqual(table.summary['games'].tolist(), [1, 3])
        self.assertTrue(table.summary_csv().startswith('n_max,pair,games,q01'))
        self.assertTrue(table.rows_csv().startswith('n,game,pair,distance\n'))

    def test_needs_two_indices(self):
        with self.assertRaises(InvalidInputError):
            distance_study(2, [IndexKind.AWI])

    @tag('slow')
    def test_study_up_to_five_voters(self):
        table = distance_study(5)
        summary = table.summary[table.summary['n_max'] == 5]
        self.assertTrue((summary['games'] == 1 + 2 + 5 + 17 + 92).all())
        self.assertTrue((table.rows['distance'] >= 0).all())
        quantiles = summary[['q01', 'q25', 'q50', 'q75', 'q99']].to_numpy()
        self.assertTrue((quantiles[:, 1:] >= quantiles[:, :-1]).all())
        medians = summary.set_index('pair')['q50']
        self.assertLess(float(medians['awi-ari']), float(medians['bzi-ssi']))
