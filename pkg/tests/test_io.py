import datetime

import numpy
import pandas
import pytest
import yaml

from ipsuncert.exceptions import ParseError, ValidationError
from ipsuncert.fitting import FitOptions, ForecastSample
from ipsuncert.fleet import FleetSpec
from ipsuncert.io import (CURVE_COLUMNS, build_report, default_grid,
                          parse_fleet_config, parse_samples,
                          read_fleet_config, scenario_curves,
                          write_curve_table, write_fleet_config,
                          write_report, write_samples)
from ipsuncert.profile import ExpDecayProfile
from ipsuncert.synth import SynthSpec, generate_frame

HEADER = 'source_id,time_advance_h,forecast_mw,actual_mw\n'


def numbers_in(node):
    """Yield every number of a report that is not a tagged `value`."""
    if isinstance(node, dict):
        tagged = set(node) == {'value', 'unit'}
        for key, value in node.items():
            if tagged and key == 'value':
                continue
            for item in numbers_in(value):
                yield item
    elif isinstance(node, list):
        for value in node:
            for item in numbers_in(value):
                yield item
    elif isinstance(node, (int, float)) and not isinstance(node, bool):
        yield node


class TestParseSamples(object):
    def test_row(self, write_text):
        path = write_text('s.csv', HEADER + 'w1,1.0,110,100\n')
        samples = parse_samples(path)
        assert samples == [ForecastSample(2, 1.0, 110.0, 100.0, 'w1', None)]

    def test_negative_time_advance(self, write_text):
        path = write_text('s.csv', HEADER + 'w1,-1,110,100\n')
        with pytest.raises(ParseError, match='row 2: negative time advance'):
            parse_samples(path)

    def test_all_bad_rows_reported(self, write_text):
        path = write_text('s.csv', HEADER + 'w1,1,110,100\n'
                                            'w1,2,abc,100\n'
                                            'w1,3,110,-5\n'
                                            ',4,110,100\n')
        with pytest.raises(ParseError) as excinfo:
            parse_samples(path)
        assert [row for row, _ in excinfo.value.errors] == [3, 4, 5]
        assert 'non-numeric forecast power' in excinfo.value.errors[0][1]
        assert excinfo.value.errors[1][1] == 'negative actual power'
        assert excinfo.value.errors[2][1] == 'missing source_id'

    def test_surplus_field_on_every_row(self, write_text):
        path = write_text('s.csv', HEADER + 'w1,1,110,100,95\n'
                                            'w1,2,120,100,97\n')
        with pytest.raises(ParseError) as excinfo:
            parse_samples(path)
        assert excinfo.value.errors == [
            (2, 'wrong number of fields: 5, expected 4'),
            (3, 'wrong number of fields: 5, expected 4')]

    def test_field_count_errors_among_other_errors(self, write_text):
        path = write_text('s.csv', HEADER + 'w1,1,110,100\n'
                                            'w1,2,110,100,7\n'
                                            'w1,-1,110,100\n'
                                            'w1,3,110\n'
                                            'w1,4,110,100\n')
        with pytest.raises(ParseError) as excinfo:
            parse_samples(path)
        assert excinfo.value.errors == [
            (3, 'wrong number of fields: 5, expected 4'),
            (4, 'negative time advance'),
            (5, 'wrong number of fields: 3, expected 4')]

    def test_surplus_field_on_first_row(self, write_text):
        path = write_text('s.csv', HEADER + 'w1,2,110,100,7\n'
                                            'w1,1,110,100\n')
        with pytest.raises(ParseError) as excinfo:
            parse_samples(path)
        assert [row for row, _ in excinfo.value.errors] == [2]

    def test_blank_lines_keep_row_numbers(self, write_text):
        path = write_text('s.csv', HEADER + 'w1,1,110,100\n'
                                            '\n'
                                            'w1,2,110,100\n')
        samples = parse_samples(path)
        assert [x.sample_id for x in samples] == [2, 4]

    def test_header_only(self, write_text):
        assert parse_samples(write_text('s.csv', HEADER)) == []

    def test_empty_file(self, write_text):
        with pytest.raises(ParseError) as excinfo:
            parse_samples(write_text('s.csv', ''))
        assert excinfo.value.errors == [(1, 'missing header')]

    @pytest.mark.parametrize('header', [
        'source,time_advance_h,forecast_mw,actual_mw\n',
        'SOURCE_ID,TIME_ADVANCE_H,FORECAST_MW,ACTUAL_MW\n',
        'source_id,time_advance_h,forecast_mw,actual_mw,extra\n'])
    def test_bad_header(self, write_text, header):
        path = write_text('s.csv', header + 'w1,1,110,100\n')
        with pytest.raises(ParseError) as excinfo:
            parse_samples(path)
        assert excinfo.value.errors[0][0] == 1

    def test_timestamp(self, write_text):
        path = write_text('s.csv', HEADER.rstrip('\n') + ',timestamp\n'
                          'w1,1,110,100,2016-07-19T12:00:00\n'
                          'w1,2,110,100,\n')
        first, second = parse_samples(path)
        assert first.timestamp == datetime.datetime(2016, 7, 19, 12)
        assert second.timestamp is None

    def test_bad_timestamp(self, write_text):
        path = write_text('s.csv', HEADER.rstrip('\n') + ',timestamp\n'
                          'w1,1,110,100,not a date\n')
        with pytest.raises(ParseError, match='invalid timestamp'):
            parse_samples(path)

    def test_order_preserved(self, write_text):
        path = write_text('s.csv', HEADER + 'w1,3,110,100\n'
                                            's1,1,90,100\n'
                                            'w1,2,100,100\n')
        samples = parse_samples(path)
        assert [x.time_advance for x in samples] == [3.0, 1.0, 2.0]
        assert [x.source_id for x in samples] == ['w1', 's1', 'w1']

    def test_missing_file(self, tmp_path):
        with pytest.raises(IOError):
            parse_samples(str(tmp_path / 'missing.csv'))

    def test_written_samples_read_back(self, tmp_path):
        spec = SynthSpec(ExpDecayProfile(10, 2), 3, [1, 2], rng_seed=5)
        path = str(tmp_path / 's.csv')
        write_samples(path, generate_frame(spec))
        samples = parse_samples(path)
        frame = generate_frame(spec)
        assert [x.forecast_power for x in samples] == pytest.approx(
            frame['forecast_mw'].tolist(), rel=1e-15)
        assert b'\r\n' not in (tmp_path / 's.csv').read_bytes()


class TestCurves(object):
    def test_default_grid(self):
        grid = default_grid()
        assert len(grid) == 481
        assert grid[0] == 0.0
        assert grid[-1] == pytest.approx(24.0)

    @pytest.mark.parametrize('t_max,t_step', [(0, 0.05), (24, 0),
                                              (24, float('nan'))])
    def test_invalid_grid(self, t_max, t_step):
        with pytest.raises(ValidationError):
            default_grid(t_max, t_step)

    def test_scenario_table(self, scenario):
        table = scenario_curves(scenario, default_grid(100, 0.5))
        assert list(table.columns) == ['t_h'] + list(CURVE_COLUMNS)
        first = table.iloc[0]
        for column in CURVE_COLUMNS[:-1]:
            assert first[column] == 0.0
        assert first['tau_equiv'] == pytest.approx(1.79, abs=0.01)
        last = table.iloc[-1]
        assert last['alpha_ips_sum'] == pytest.approx(33.87, abs=0.005)
        assert last['alpha_ips_contour'] == pytest.approx(33.87, abs=0.005)
        assert last['alpha_g_contour'] == pytest.approx(20.32, abs=0.005)
        assert numpy.all(table['alpha_ips_contour'] >=
                         table['alpha_ips_sum'] - 1e-12)

    def test_two_component_tau_equiv(self):
        spec = FleetSpec(ExpDecayProfile(10, 4), ExpDecayProfile(10, 2), 0.8,
                         1.0)
        table = scenario_curves(spec, [0, 4, 100])
        assert table['tau_equiv'][0] == pytest.approx(3.33, abs=0.005)
        assert table['tau_equiv'][2] == pytest.approx(3.9646, abs=1e-3)

    def test_zero_ips_share(self, wind, solar):
        table = scenario_curves(FleetSpec(wind, solar, 0.8, 0), [0, 1, 2])
        assert table['alpha_g_contour'].tolist() == [0.0, 0.0, 0.0]

    def test_missing_source_column(self, wind):
        table = scenario_curves(FleetSpec(wind, None, 1, 1), [0, 1, 2])
        assert table['alpha_s'].tolist() == [0.0, 0.0, 0.0]
        assert table['alpha_w'].tolist() == pytest.approx(
            table['alpha_ips_sum'].tolist(), rel=1e-12)

    @pytest.mark.parametrize('grid', [[], [1, 0], [-1, 0, 1]])
    def test_invalid_time_grid(self, scenario, grid):
        with pytest.raises(ValueError):
            scenario_curves(scenario, grid)

    def test_write(self, scenario, tmp_path):
        path = tmp_path / 'curves.csv'
        table = scenario_curves(scenario, default_grid())
        write_curve_table(str(path), table)
        text = path.read_bytes()
        assert text.startswith(b't_h,alpha_w,alpha_s,alpha_ips_sum,'
                               b'alpha_ips_contour,alpha_g_contour,'
                               b'tau_equiv\n')
        assert b'\r' not in text
        assert pandas.read_csv(str(path))['tau_equiv'].tolist() == \
            pytest.approx(table['tau_equiv'].tolist(), rel=1e-15)


class TestFleetConfig(object):
    def test_scenario(self, scenario_config, scenario):
        spec, options = parse_fleet_config(scenario_config)
        assert spec == scenario
        assert options == FitOptions()

    def test_read_defaults(self, scenario_config):
        config = read_fleet_config(scenario_config)
        assert config.fits == {}
        assert len(config.grid) == 481

    def test_overrides(self, scenario_config):
        config = read_fleet_config(scenario_config, fit_mode='lsq',
                                   t_max=12, t_step=1, amplitude_mode=None)
        assert config.options.fit_mode == 'least_squares'
        assert config.options.amplitude_mode == 'max'
        assert config.grid.tolist() == list(range(13))

    def test_invalid_beta(self, write_text):
        path = write_text('c.ini', """
            [wind]
            amplitude = 31.86
            time_coefficient = 2.67

            [fleet]
            beta_w = 1.5
            beta_ips = 0.6
            """)
        with pytest.raises(ValidationError) as excinfo:
            parse_fleet_config(path)
        assert excinfo.value.key == 'fleet.beta_w'

    def test_missing_solar_accepted(self, write_text):
        path = write_text('c.ini', """
            [wind]
            amplitude = 31.86 ; percent
            time_coefficient = 2.67

            [fleet]
            beta_w = 1
            beta_ips = 0.6
            """)
        spec, _ = parse_fleet_config(path)
        assert spec.solar_profile is None
        assert spec.wind_profile == (31.86, 2.67)

    def test_missing_solar_rejected(self, write_text):
        path = write_text('c.ini', """
            [wind]
            amplitude = 31.86
            time_coefficient = 2.67

            [fleet]
            beta_w = 0.8
            beta_ips = 0.6
            """)
        with pytest.raises(ValidationError) as excinfo:
            parse_fleet_config(path)
        assert excinfo.value.key == 'solar'

    @pytest.mark.parametrize('wind,key', [
        ('time_coefficient = 2.67', 'wind.amplitude'),
        ('amplitude = -1\ntime_coefficient = 2.67', 'wind.amplitude'),
        ('amplitude = 31.86\ntime_coefficient = 0', 'wind.time_coefficient'),
        ('amplitude = lots\ntime_coefficient = 2', 'wind.amplitude')])
    def test_invalid_profile(self, write_text, wind, key):
        path = write_text('c.ini', '[wind]\n{0}\n\n[fleet]\nbeta_w = 1\n'
                          'beta_ips = 1\n'.format(wind))
        with pytest.raises(ValidationError) as excinfo:
            parse_fleet_config(path)
        assert excinfo.value.key == key

    def test_missing_fleet(self, write_text):
        path = write_text('c.ini', '[wind]\namplitude = 1\n')
        with pytest.raises(ValidationError) as excinfo:
            parse_fleet_config(path)
        assert excinfo.value.key == 'fleet'

    def test_invalid_fit_mode(self, write_text):
        path = write_text('c.ini', '[wind]\namplitude = 1\n'
                          'time_coefficient = 1\n[fleet]\nbeta_w = 1\n'
                          'beta_ips = 1\n[fit]\nfit_mode = spline\n')
        with pytest.raises(ValidationError) as excinfo:
            parse_fleet_config(path)
        assert excinfo.value.key == 'fit.fit_mode'

    def test_fit_from_samples(self, tmp_path, write_text):
        spec = SynthSpec(ExpDecayProfile(10, 2), 1, range(1, 25),
                         noiseless=True)
        write_samples(str(tmp_path / 'wind.csv'), generate_frame(spec))
        path = write_text('c.ini', """
            [wind]
            samples = wind.csv

            [fleet]
            beta_w = 1
            beta_ips = 0.5

            [fit]
            fit_mode = lsq
            amplitude_mode = at24
            """)
        config = read_fleet_config(path)
        assert config.options == FitOptions('at_24h', 0, 'least_squares')
        assert config.spec.wind_profile.amplitude == pytest.approx(10,
                                                                   rel=1e-6)
        assert config.spec.wind_profile.time_coefficient == pytest.approx(
            2, rel=1e-6)
        assert config.fits['wind'].sequence.excluded == 0

    def test_written_config_reads_back(self, tmp_path, wind):
        spec = FleetSpec(wind, None, 1, 0.35)
        options = FitOptions('at_24h', 2.5, 'least_squares')
        path = str(tmp_path / 'c.ini')
        write_fleet_config(path, spec, options)
        assert parse_fleet_config(path) == (spec, options)

    def test_written_config_twelve_digits(self, tmp_path):
        spec = FleetSpec(ExpDecayProfile(31.8612345678901234, 2.67),
                         ExpDecayProfile(41.9, 0.891234567890123), 0.8, 0.6)
        path = str(tmp_path / 'c.ini')
        write_fleet_config(path, spec)
        read, _ = parse_fleet_config(path)
        assert read.wind_profile.amplitude == float('31.8612345679')
        assert read.solar_profile.time_coefficient == float('0.891234567890')
        write_fleet_config(path, read)
        assert parse_fleet_config(path)[0] == read


class TestReport(object):
    def test_scenario(self, scenario_config):
        config = read_fleet_config(scenario_config)
        report = build_report(config, scenario_config, 'curves.csv')
        assert list(report) == ['inputs', 'fitted_profiles', 'ips',
                                'all_sources', 'curves']
        ips = report['ips']
        assert ips['amplitude'] == {'value': pytest.approx(33.868),
                                    'unit': 'percent'}
        assert ips['gamma']['value'] == pytest.approx(0.7526, abs=0.0005)
        assert ips['contour_time_coefficient']['unit'] == 'hours'
        assert ips['contour_time_coefficient']['value'] == pytest.approx(
            1.79, abs=0.01)
        assert ips['coefficients']['wind']['value'] == pytest.approx(25.488)
        assert ips['max_deviation']['delta_alpha_star']['value'] == \
            pytest.approx(2.24, abs=0.10)
        assert report['all_sources']['amplitude']['value'] == \
            pytest.approx(20.32, abs=0.005)
        assert report['all_sources']['zero_uncertainty'] is False
        assert report['fitted_profiles']['wind']['origin'] == 'given'
        assert report['curves'] == {'table': 'curves.csv'}
        assert list(numbers_in(report)) == []

    def test_zero_ips_share(self, write_text):
        path = write_text('c.ini', """
            [wind]
            amplitude = 31.86
            time_coefficient = 2.67

            [fleet]
            beta_w = 1
            beta_ips = 0
            """)
        report = build_report(read_fleet_config(path))
        assert report['all_sources']['amplitude']['value'] == 0.0
        assert report['all_sources']['zero_uncertainty'] is True
        assert 'zero uncertainty' in report['all_sources']['note']

    def test_write(self, scenario_config, tmp_path):
        report = build_report(read_fleet_config(scenario_config),
                              scenario_config)
        path = tmp_path / 'report.yml'
        write_report(str(path), report)
        assert yaml.safe_load(path.read_text()) == report
